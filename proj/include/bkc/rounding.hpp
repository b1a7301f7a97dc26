#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkc/sol.hpp"

namespace bkc {

// Raised when an adjustment round loses feasibility or fails to reduce the
// number of fractional entries. Either means a bug, never bad input.
class RoundingInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Edge between clusters u < v, colored by the region whose x[color][u] and
// x[color][v] are both fractional.
struct ColoredEdge {
  int u = 0;
  int v = 0;
  Mask color = 0;
  friend bool operator==(const ColoredEdge&, const ColoredEdge&) = default;
};

struct ColoredMultigraph {
  int k = 0;
  std::vector<ColoredEdge> edges;  // ordered by color, then (u, v)

  int degree(int vertex) const;
  bool has_edge(int a, int b, Mask color) const;
};

ColoredMultigraph build_graph(const SolSolution& solution, int k);

// A closed walk v[0] -> v[1] -> ... -> v[h-1] -> v[0] where the edge leaving
// v[i] has color colors[i]. As an open path, vertices has one more entry
// than colors.
struct CouplePath {
  std::vector<int> vertices;
  std::vector<Mask> colors;
};

// First simple cycle (DFS from the lowest vertex, neighbors by color then
// vertex) with at least two colors, after contracting consecutive
// same-colored edges. In the result no two cyclically adjacent edges share a
// color.
std::optional<CouplePath> find_multicolor_cycle(const ColoredMultigraph& g);

// Alternating adjustment along the couples (x[c_i][v_i], x[c_i][v_{i+1}]):
// first element of each couple -delta, second +delta, with delta the largest
// step that keeps every touched entry between its floor and ceiling.
// Returns delta.
Rational adjust_cycle(const CouplePath& cycle, SolSolution& solution);
Rational adjust_path(const CouplePath& path, SolSolution& solution);

bool is_forest(const ColoredMultigraph& g);

// Leaf-to-leaf path in a forest: from the lowest-index leaf to the
// lowest-index other leaf of its tree.
std::optional<CouplePath> forest_leaf_path(const ColoredMultigraph& g);

struct PseudoTreeNode {
  std::vector<int> vertices;  // one vertex, or a single-color clique
  bool clique = false;
  Mask color = 0;  // clique color
  int parent = -1;
  std::vector<int> children;
};

// One tree per connected component of g that has edges.
struct PseudoTree {
  std::vector<PseudoTreeNode> nodes;
  std::vector<int> roots;

  // Nodes of tree degree <= 1, in pre-order of the tree rooted at `root`.
  std::vector<int> leaves(int root) const;
};

// Recursive decomposition: pick a vertex (the lowest one for a component
// root, otherwise the lowest one adjacent to the parent node); if it lies on
// no cycle it becomes a node by itself, otherwise its whole single-color
// clique does. Remove the node and recurse on the remaining components.
// Meant for graphs without multicolor cycles.
PseudoTree pseudo_tree(const ColoredMultigraph& g);

// Vertices of a clique node all of whose incident edges carry the clique's
// color, i.e. whose cluster sum is fractional.
std::vector<int> clique_vertices_without_outward_edges(
    const ColoredMultigraph& g, const PseudoTreeNode& node);

// x[color][from] -= delta, x[color][to] += delta with
// delta = min(frac(x[color][from]), ceil(x[color][to]) - x[color][to]).
Rational adjust_clique_leaf(Mask color, int from, int to,
                            SolSolution& solution);

enum class RoundingCase { kMulticolorCycle, kForestPath, kCliqueLeaf, kPseudoTreePath };

const char* case_label(RoundingCase c);

struct RoundingStep {
  RoundingCase kind{};
  CouplePath couples;
  bool closed = false;
  Rational delta;
  std::size_t fractional_before = 0;
  std::size_t fractional_after = 0;
};

struct RoundingLog {
  std::vector<RoundingStep> steps;
};

// "case=I path=1-2-3-1 colors=3,6,5 delta=1/2 fractional=6->0", clusters
// printed 1-based.
std::string trace_line(const RoundingStep& step);

// Turns a feasible, possibly fractional solution into an integral feasible
// one. Each round applies Case I while a multicolor cycle exists, Case II if
// the graph is a forest, otherwise Case III via the pseudo tree. Every round
// is checked for feasibility and strict progress; violations throw
// RoundingInvariantError.
SolSolution round_to_integer(const SolSolution& solution,
                             const SolSystem& system,
                             RoundingLog* log = nullptr);

}  // namespace bkc
