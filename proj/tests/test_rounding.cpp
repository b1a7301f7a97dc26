#include <set>

#include "doctest.h"

#include "bkc/rounding.hpp"
#include "bkc/sol.hpp"
#include "support.hpp"

using namespace bkc;
using testing::table_from_counts;

namespace {

constexpr Mask A = 0b011, B = 0b110, C = 0b101;

struct Fixture {
  SolSystem system;
  SolSolution solution;
};

Fixture triangle() {
  Fixture f{*build_sol(table_from_counts(3, {{A, 1}, {B, 1}, {C, 1}}), 1, 1), {}};
  for (Mask m : {A, B, C})
    for (int j : testing::bits_of(m)) f.solution.values[{m, j}] = Rational(1, 2);
  return f;
}

// Path 0 - 1 - 2 through regions {0,1} and {1,2}.
Fixture path3() {
  Fixture f{*build_sol(table_from_counts(3, {{0b001, 1}, {A, 1}, {0b100, 1}, {B, 1}}), 1, 3),
            {}};
  auto& v = f.solution.values;
  v[{0b001, 0}] = 1;
  v[{0b100, 2}] = 1;
  v[{A, 0}] = Rational(2, 5);
  v[{A, 1}] = Rational(3, 5);
  v[{B, 1}] = Rational(2, 5);
  v[{B, 2}] = Rational(3, 5);
  return f;
}

// One region shared by all three clusters, a single-color triangle.
Fixture clique3() {
  Fixture f{*build_sol(table_from_counts(3, {{0b001, 1}, {0b010, 1}, {0b100, 1}, {0b111, 2}}),
                       1, 3),
            {}};
  auto& v = f.solution.values;
  for (int j = 0; j < 3; ++j) {
    v[{Mask{1} << j, j}] = 1;
    v[{0b111, j}] = Rational(2, 3);
  }
  return f;
}

// Applies the logged couples by hand and checks each intermediate state.
void replay(const Fixture& f, const RoundingLog& log, const SolSolution& final) {
  SolSolution cur = f.solution;
  for (const RoundingStep& s : log.steps) {
    const auto& v = s.couples.vertices;
    REQUIRE(v.size() == s.couples.colors.size() + (s.closed ? 0 : 1));
    REQUIRE(s.delta > Rational(0));
    for (std::size_t i = 0; i < s.couples.colors.size(); ++i) {
      const Mask c = s.couples.colors[i];
      cur.at(c, v[i]) -= s.delta;
      cur.at(c, v[(i + 1) % v.size()]) += s.delta;
    }
    std::string why;
    CHECK_MESSAGE(satisfies_constraints(cur, f.system, &why), why);
    CHECK(fractional_count(cur) == s.fractional_after);
    CHECK(s.fractional_after < s.fractional_before);
  }
  CHECK(cur.values == final.values);
}

}  // namespace

TEST_CASE("graph of an integral solution has no edges") {
  SolSolution s;
  s.values[{A, 0}] = 1;
  s.values[{A, 1}] = 2;
  CHECK(build_graph(s, 2).edges.empty());
}

TEST_CASE("one fractional region gives one edge") {
  SolSolution s;
  s.values[{A, 0}] = Rational(1, 2);
  s.values[{A, 1}] = Rational(1, 2);
  const auto g = build_graph(s, 3);
  CHECK(g.edges == std::vector<ColoredEdge>{{0, 1, A}});
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(2) == 0);
  CHECK(g.has_edge(1, 0, A));
  CHECK_FALSE(g.has_edge(0, 1, B));
}

TEST_CASE("triangle fixture: three colors, one cycle step with delta 1/2") {
  const auto f = triangle();
  const auto g = build_graph(f.solution, 3);
  CHECK(g.edges.size() == 3);
  std::set<Mask> colors;
  for (const auto& e : g.edges) colors.insert(e.color);
  CHECK(colors.size() == 3);

  const auto cycle = find_multicolor_cycle(g);
  REQUIRE(cycle);
  CHECK(cycle->vertices.size() == 3);

  RoundingLog log;
  const auto out = round_to_integer(f.solution, f.system, &log);
  REQUIRE(log.steps.size() == 1);
  CHECK(log.steps[0].kind == RoundingCase::kMulticolorCycle);
  CHECK(log.steps[0].delta == Rational(1, 2));
  CHECK(log.steps[0].fractional_before == 6);
  CHECK(log.steps[0].fractional_after == 0);
  CHECK(trace_line(log.steps[0]).rfind("case=I ", 0) == 0);
  CHECK(is_integral(out));
  CHECK(satisfies_constraints(out, f.system));
  // One of the two orientations: each region goes wholly to one endpoint.
  const bool forward = out.at(A, 1) == 1 && out.at(B, 2) == 1 && out.at(C, 0) == 1;
  const bool backward = out.at(A, 0) == 1 && out.at(B, 1) == 1 && out.at(C, 2) == 1;
  CHECK((forward || backward));
  replay(f, log, out);
}

TEST_CASE("path fixture: forest case integerizes both regions") {
  const auto f = path3();
  const auto g = build_graph(f.solution, 3);
  CHECK(is_forest(g));
  CHECK_FALSE(find_multicolor_cycle(g));
  const auto path = forest_leaf_path(g);
  REQUIRE(path);
  CHECK(path->vertices == std::vector<int>{0, 1, 2});
  CHECK(path->colors == std::vector<Mask>{A, B});

  RoundingLog log;
  const auto out = round_to_integer(f.solution, f.system, &log);
  REQUIRE(log.steps.size() == 1);
  CHECK(log.steps[0].kind == RoundingCase::kForestPath);
  CHECK(log.steps[0].delta == Rational(2, 5));
  CHECK(out.at(A, 0) == 0);
  CHECK(out.at(A, 1) == 1);
  CHECK(out.at(B, 1) == 0);
  CHECK(out.at(B, 2) == 1);
  CHECK(trace_line(log.steps[0]) ==
        "case=II path=1-2-3 colors=3,6 delta=2/5 fractional=4->0");
  replay(f, log, out);
}

TEST_CASE("adjust_cycle and adjust_path move delta along couples") {
  auto f = path3();
  const Rational d = adjust_path(CouplePath{{2, 1}, {B}}, f.solution);
  // min(3/5 - 0, 1 - 2/5)
  CHECK(d == Rational(3, 5));
  CHECK(f.solution.at(B, 2) == Rational(0));
  CHECK(f.solution.at(B, 1) == Rational(1));

  auto t = triangle();
  const Rational dc = adjust_cycle(CouplePath{{0, 1, 2}, {A, B, C}}, t.solution);
  CHECK(dc == Rational(1, 2));
  CHECK(t.solution.at(A, 0) == 0);
  CHECK(t.solution.at(A, 1) == 1);
  CHECK(t.solution.at(C, 2) == 0);
  CHECK(t.solution.at(C, 0) == 1);
}

TEST_CASE("single-color clique goes through the pseudo tree") {
  const auto f = clique3();
  const auto g = build_graph(f.solution, 3);
  CHECK_FALSE(is_forest(g));
  CHECK_FALSE(find_multicolor_cycle(g));
  const auto tree = pseudo_tree(g);
  REQUIRE(tree.nodes.size() == 1);
  CHECK(tree.nodes[0].clique);
  CHECK(tree.nodes[0].color == Mask{0b111});
  CHECK(tree.nodes[0].vertices == std::vector<int>{0, 1, 2});
  CHECK(clique_vertices_without_outward_edges(g, tree.nodes[0]).size() == 3);

  RoundingLog log;
  const auto out = round_to_integer(f.solution, f.system, &log);
  REQUIRE_FALSE(log.steps.empty());
  CHECK(log.steps[0].kind == RoundingCase::kCliqueLeaf);
  CHECK(log.steps[0].delta == Rational(1, 3));
  CHECK(is_integral(out));
  replay(f, log, out);
}

TEST_CASE("clique leaf adjustment moves the smaller gap") {
  auto f = clique3();
  const Rational d = adjust_clique_leaf(0b111, 0, 1, f.solution);
  CHECK(d == Rational(1, 3));
  CHECK(f.solution.at(0b111, 0) == Rational(1, 3));
  CHECK(f.solution.at(0b111, 1) == Rational(1));
}

TEST_CASE("same-color runs are contracted before measuring a cycle") {
  // Region X spans {0,1,2}; region Y spans {0,2}. The triangle 0-1-2 of X
  // together with the Y edge 0-2 contracts to a two-color 2-cycle.
  constexpr Mask X = 0b111, Y = 0b101;
  SolSolution s;
  for (int j = 0; j < 3; ++j) s.values[{X, j}] = Rational(1, 3);
  s.values[{Y, 0}] = Rational(1, 2);
  s.values[{Y, 2}] = Rational(1, 2);
  const auto g = build_graph(s, 3);
  const auto cycle = find_multicolor_cycle(g);
  REQUIRE(cycle);
  const auto h = cycle->colors.size();
  for (std::size_t i = 0; i < h; ++i) CHECK(cycle->colors[i] != cycle->colors[(i + 1) % h]);
}

TEST_CASE("integral input comes back unchanged") {
  const auto sys = build_sol(table_from_counts(2, {{0b11, 4}}), 2, 2);
  const auto sol = solve_sol(*sys);
  RoundingLog log;
  CHECK(round_to_integer(*sol, *sys, &log).values == sol->values);
  CHECK(log.steps.empty());
}

TEST_CASE("infeasible input is rejected") {
  auto f = triangle();
  f.solution.at(A, 0) = Rational(3, 2);
  CHECK_THROWS_AS(round_to_integer(f.solution, f.system), std::invalid_argument);
}

TEST_CASE("random convex combinations round correctly and cover every case") {
  testing::Rng rng(2024);
  std::set<RoundingCase> seen;
  for (int trial = 0; trial < 1500; ++trial) {
    const int k = static_cast<int>(testing::uniform(rng, 2, 5));
    auto fc = testing::random_fractional_case(rng, k);
    Fixture f{fc.system, fc.solution};
    REQUIRE(satisfies_constraints(f.solution, f.system));
    RoundingLog log;
    const auto out = round_to_integer(f.solution, f.system, &log);
    CHECK(is_integral(out));
    CHECK(satisfies_constraints(out, f.system));
    for (const auto& s : log.steps) seen.insert(s.kind);
    replay(f, log, out);
  }
  CHECK(seen.count(RoundingCase::kMulticolorCycle));
  CHECK(seen.count(RoundingCase::kForestPath));
  CHECK(seen.count(RoundingCase::kCliqueLeaf));
}

TEST_CASE("random multicolor cycles respect their postcondition") {
  testing::Rng rng(555);
  int found = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto fc = testing::random_fractional_case(rng, static_cast<int>(testing::uniform(rng, 3, 5)));
    const auto g = build_graph(fc.solution, fc.system.k);
    const auto cycle = find_multicolor_cycle(g);
    if (!cycle) continue;
    ++found;
    const auto& v = cycle->vertices;
    const auto h = v.size();
    REQUIRE(h == cycle->colors.size());
    CHECK(std::set<int>(v.begin(), v.end()).size() == h);
    for (std::size_t i = 0; i < h; ++i) {
      CHECK(cycle->colors[i] != cycle->colors[(i + 1) % h]);
      CHECK(g.has_edge(v[i], v[(i + 1) % h], cycle->colors[i]));
    }
  }
  CHECK(found > 20);
}
