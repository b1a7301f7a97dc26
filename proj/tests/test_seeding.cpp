#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"

#include "bkc/generators.hpp"
#include "bkc/oracles.hpp"
#include "bkc/seeding.hpp"
#include "support.hpp"

using namespace bkc;

namespace {

MetricInstance fig4() {
  return MetricInstance::from_coordinates(fig4_instance(0.1).coords, 1, {3, 2, 2});
}

// Farthest-first recomputed from scratch at every step, without the running
// min array.
std::vector<PointIndex> naive_gonzalez(const MetricInstance& inst, PointIndex first) {
  std::vector<PointIndex> chosen{first};
  while (static_cast<int>(chosen.size()) < inst.k()) {
    double best = -1;
    PointIndex arg = 0;
    for (PointIndex p = 0; p < inst.size(); ++p) {
      if (std::find(chosen.begin(), chosen.end(), p) != chosen.end()) continue;
      double m = std::numeric_limits<double>::infinity();
      for (PointIndex s : chosen) m = std::min(m, inst.dist2(p, s));
      if (m > best) best = m, arg = p;
    }
    chosen.push_back(arg);
  }
  return chosen;
}

}  // namespace

TEST_CASE("fig4 seeding from the second point") {
  const auto s = gonzalez_select(fig4(), 1);
  CHECK(s.indices == std::vector<PointIndex>{1, 4, 0});
}

TEST_CASE("fig5 seeding from the first point") {
  const auto pc = fig5_instance(1, 1, 100);
  const auto inst = MetricInstance::from_coordinates(pc.coords, 2, {3, 2, 2});
  const auto s = gonzalez_select(inst, 0);
  CHECK(s.indices == std::vector<PointIndex>{0, 5, 4});
  CHECK(s.indices == naive_gonzalez(inst, 0));
}

TEST_CASE("k = 1 keeps only the first point") {
  const auto inst = MetricInstance::from_coordinates({0, 5, 9}, 1, {1, 3, 3});
  for (PointIndex f = 0; f < 3; ++f) {
    const auto s = gonzalez_select(inst, f);
    CHECK(s.indices == std::vector<PointIndex>{f});
    for (PointIndex p = 0; p < 3; ++p) CHECK(s.min_dist2[p] == inst.dist2(p, f));
  }
}

TEST_CASE("first index out of range") {
  CHECK_THROWS_AS(gonzalez_select(fig4(), 6), std::out_of_range);
}

TEST_CASE("ties go to the lowest index") {
  // 0 and 2 are both at distance 1 from 1.
  const auto inst = MetricInstance::from_coordinates({-1, 0, 1}, 1, {2, 1, 2});
  CHECK(gonzalez_select(inst, 1).indices == std::vector<PointIndex>{1, 0});
}

TEST_CASE("coincident points never get picked twice") {
  const auto inst = MetricInstance::from_coordinates({2, 2, 2, 2}, 1, {3, 1, 2});
  const auto s = gonzalez_select(inst, 2);
  CHECK(s.indices == std::vector<PointIndex>{2, 0, 1});
}

TEST_CASE("random instances: max-min property and min distances") {
  testing::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::uniform(rng, 3, 40);
    const int k = static_cast<int>(testing::uniform(rng, 1, std::min<std::size_t>(5, n)));
    const auto inst = testing::random_instance(rng, n, testing::uniform(rng, 1, 4), k);
    const PointIndex first = testing::uniform(rng, 0, n - 1);
    const auto s = gonzalez_select(inst, first);
    REQUIRE(s.indices.size() == static_cast<std::size_t>(k));
    CHECK(s.indices == naive_gonzalez(inst, first));
    for (PointIndex p = 0; p < n; ++p) {
      double m = std::numeric_limits<double>::infinity();
      for (PointIndex q : s.indices) m = std::min(m, inst.dist2(p, q));
      CHECK(s.min_dist2[p] == m);
    }
  }
}

TEST_CASE("nearest-seed radius is within twice the unconstrained optimum") {
  testing::Rng rng(202);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = testing::uniform(rng, 3, 10);
    const int k = static_cast<int>(testing::uniform(rng, 1, 3));
    const auto inst = testing::random_instance(rng, n, testing::uniform(rng, 1, 3), k);
    const auto s = gonzalez_select(inst, testing::uniform(rng, 0, n - 1));
    const double r = std::sqrt(*std::max_element(s.min_dist2.begin(), s.min_dist2.end()));
    const auto opt = oracle::brute_force_kcenter(inst);
    CHECK(r <= 2 * opt.radius + 1e-9);
  }
}
