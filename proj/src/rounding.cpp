#include "bkc/rounding.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace bkc {

namespace {

struct Arc {
  Mask color;
  int to;
  std::size_t edge;
};

// Per-vertex incidence lists ordered by (color, neighbor).
std::vector<std::vector<Arc>> adjacency(const ColoredMultigraph& g) {
  std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(g.k));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const ColoredEdge& ed = g.edges[e];
    adj[ed.u].push_back({ed.color, ed.v, e});
    adj[ed.v].push_back({ed.color, ed.u, e});
  }
  for (auto& list : adj)
    std::sort(list.begin(), list.end(), [](const Arc& a, const Arc& b) {
      return a.color != b.color ? a.color < b.color : a.to < b.to;
    });
  return adj;
}

[[noreturn]] void invariant_failure(const std::string& what,
                                    const SolSolution& sol) {
  std::ostringstream os;
  os << "rounding invariant violated: " << what << "; state:";
  for (const auto& [key, value] : sol.values)
    os << " x[" << key.mask << "][" << key.cluster + 1 << "]=" << value;
  throw RoundingInvariantError(os.str());
}

struct Couple {
  Mask color;
  int dec;
  int inc;
};

std::vector<Couple> couples_of(const CouplePath& p, bool closed) {
  std::vector<Couple> out;
  const std::size_t h = p.colors.size();
  for (std::size_t i = 0; i < h; ++i) {
    const int next = closed ? p.vertices[(i + 1) % h] : p.vertices[i + 1];
    out.push_back({p.colors[i], p.vertices[i], next});
  }
  return out;
}

Rational apply_couples(const std::vector<Couple>& couples, SolSolution& sol) {
  std::optional<Rational> delta;
  auto consider = [&](const Rational& d) {
    if (!delta || d < *delta) delta = d;
  };
  for (const Couple& c : couples) {
    const Rational& down = sol.at(c.color, c.dec);
    const Rational& up = sol.at(c.color, c.inc);
    consider(down - down.floor());
    consider(up.ceil() - up);
  }
  if (!delta || delta->sign() <= 0)
    invariant_failure("adjustment has no positive step", sol);
  for (const Couple& c : couples) {
    sol.at(c.color, c.dec) -= *delta;
    sol.at(c.color, c.inc) += *delta;
  }
  return *delta;
}

// Connected components of the subgraph induced by `members`, each sorted,
// ordered by lowest vertex. Edges in `skip` are ignored.
std::vector<std::vector<int>> components(const ColoredMultigraph& g,
                                         const std::vector<char>& members,
                                         std::size_t skip = SIZE_MAX) {
  std::vector<int> parent(static_cast<std::size_t>(g.k));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const ColoredEdge& ed = g.edges[e];
    if (e == skip || !members[ed.u] || !members[ed.v]) continue;
    parent[find(ed.u)] = find(ed.v);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> slot(static_cast<std::size_t>(g.k), -1);
  for (int v = 0; v < g.k; ++v) {
    if (!members[v]) continue;
    const int r = find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(v);
  }
  return out;
}

bool connected_without(const ColoredMultigraph& g,
                       const std::vector<char>& members, std::size_t skip,
                       int a, int b) {
  for (const auto& comp : components(g, members, skip)) {
    const bool has_a = std::find(comp.begin(), comp.end(), a) != comp.end();
    const bool has_b = std::find(comp.begin(), comp.end(), b) != comp.end();
    if (has_a || has_b) return has_a && has_b;
  }
  return false;
}

// A vertex lies on a cycle iff one of its edges is not a bridge.
bool on_cycle(const ColoredMultigraph& g, const std::vector<char>& members,
              int v) {
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const ColoredEdge& ed = g.edges[e];
    if (!members[ed.u] || !members[ed.v]) continue;
    if (ed.u != v && ed.v != v) continue;
    if (connected_without(g, members, e, ed.u, ed.v)) return true;
  }
  return false;
}

// Vertices of `members` touched by a color-`c` edge inside `members`.
std::vector<int> color_class(const ColoredMultigraph& g,
                             const std::vector<char>& members, Mask c) {
  std::set<int> vs;
  for (const ColoredEdge& ed : g.edges)
    if (ed.color == c && members[ed.u] && members[ed.v]) {
      vs.insert(ed.u);
      vs.insert(ed.v);
    }
  return {vs.begin(), vs.end()};
}

class PseudoTreeBuilder {
 public:
  explicit PseudoTreeBuilder(const ColoredMultigraph& g) : g_(g) {}

  PseudoTree build() {
    std::vector<char> members(static_cast<std::size_t>(g_.k), 0);
    for (const ColoredEdge& ed : g_.edges) members[ed.u] = members[ed.v] = 1;
    for (const auto& comp : components(g_, members))
      tree_.roots.push_back(grow(comp, -1));
    return std::move(tree_);
  }

 private:
  int grow(const std::vector<int>& comp, int parent) {
    std::vector<char> members(static_cast<std::size_t>(g_.k), 0);
    for (int v : comp) members[v] = 1;

    int root = comp.front();
    std::optional<Mask> attach_color;
    if (parent >= 0) {
      const auto& pv = tree_.nodes[parent].vertices;
      for (int v : comp) {
        for (const ColoredEdge& ed : g_.edges) {
          const int other = ed.u == v ? ed.v : ed.v == v ? ed.u : -1;
          if (other >= 0 &&
              std::find(pv.begin(), pv.end(), other) != pv.end()) {
            attach_color = ed.color;
            break;
          }
        }
        if (attach_color) {
          root = v;
          break;
        }
      }
    }

    PseudoTreeNode node;
    node.parent = parent;
    if (!on_cycle(g_, members, root)) {
      node.vertices = {root};
    } else {
      std::optional<Mask> chosen;
      std::set<Mask> colors;
      for (const ColoredEdge& ed : g_.edges)
        if ((ed.u == root || ed.v == root) && members[ed.u] && members[ed.v])
          colors.insert(ed.color);
      auto qualifies = [&](Mask c) {
        return colors.count(c) && color_class(g_, members, c).size() >= 3;
      };
      if (attach_color && qualifies(*attach_color)) chosen = attach_color;
      for (Mask c : colors)
        if (!chosen && qualifies(c)) chosen = c;
      // A cycle through `root` with no single-color clique of size >= 3
      // means the graph has a multicolor cycle, which callers exclude.
      if (!chosen)
        throw RoundingInvariantError(
            "pseudo tree: vertex on a cycle but in no single-color clique");
      node.clique = true;
      node.color = *chosen;
      node.vertices = color_class(g_, members, *chosen);
    }

    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back(node);
    if (parent >= 0) tree_.nodes[parent].children.push_back(id);

    for (int v : node.vertices) members[v] = 0;
    for (const auto& sub : components(g_, members)) grow(sub, id);
    return id;
  }

  const ColoredMultigraph& g_;
  PseudoTree tree_;
};

// Shortest path from a to b, neighbors scanned by (color, vertex).
std::optional<CouplePath> shortest_path(const ColoredMultigraph& g, int a,
                                        int b) {
  const auto adj = adjacency(g);
  std::vector<int> prev(static_cast<std::size_t>(g.k), -1);
  std::vector<Mask> via(static_cast<std::size_t>(g.k), 0);
  std::vector<char> seen(static_cast<std::size_t>(g.k), 0);
  std::queue<int> q;
  q.push(a);
  seen[a] = 1;
  while (!q.empty()) {
    const int at = q.front();
    q.pop();
    if (at == b) break;
    for (const Arc& arc : adj[at]) {
      if (seen[arc.to]) continue;
      seen[arc.to] = 1;
      prev[arc.to] = at;
      via[arc.to] = arc.color;
      q.push(arc.to);
    }
  }
  if (!seen[b]) return std::nullopt;
  CouplePath path;
  for (int v = b; v != a; v = prev[v]) {
    path.vertices.push_back(v);
    path.colors.push_back(via[v]);
  }
  path.vertices.push_back(a);
  std::reverse(path.vertices.begin(), path.vertices.end());
  std::reverse(path.colors.begin(), path.colors.end());
  return path;
}

bool tree_has_clique(const PseudoTree& tree, int root) {
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (tree.nodes[id].clique) return true;
    for (int c : tree.nodes[id].children) stack.push_back(c);
  }
  return false;
}

void require_fractional_sum(const SolSolution& sol, int vertex,
                            const char* who) {
  if (cluster_sum(sol, vertex).is_integer()) {
    std::ostringstream os;
    os << who << " cluster " << vertex + 1
       << " has an integral sum, so its bound may be tight";
    invariant_failure(os.str(), sol);
  }
}

}  // namespace

int ColoredMultigraph::degree(int vertex) const {
  int d = 0;
  for (const ColoredEdge& e : edges)
    if (e.u == vertex || e.v == vertex) ++d;
  return d;
}

bool ColoredMultigraph::has_edge(int a, int b, Mask color) const {
  if (a > b) std::swap(a, b);
  return std::find(edges.begin(), edges.end(), ColoredEdge{a, b, color}) !=
         edges.end();
}

ColoredMultigraph build_graph(const SolSolution& solution, int k) {
  ColoredMultigraph g;
  g.k = k;
  auto it = solution.values.begin();
  while (it != solution.values.end()) {
    const Mask mask = it->first.mask;
    std::vector<int> fractional;
    for (; it != solution.values.end() && it->first.mask == mask; ++it)
      if (!it->second.is_integer()) fractional.push_back(it->first.cluster);
    for (std::size_t a = 0; a < fractional.size(); ++a)
      for (std::size_t b = a + 1; b < fractional.size(); ++b)
        g.edges.push_back({fractional[a], fractional[b], mask});
  }
  return g;
}

std::optional<CouplePath> find_multicolor_cycle(const ColoredMultigraph& g) {
  const auto adj = adjacency(g);
  std::vector<int> verts;
  std::vector<std::size_t> used;
  std::vector<char> on_path(static_cast<std::size_t>(g.k), 0);
  std::optional<CouplePath> found;

  auto colors_of = [&](const std::vector<std::size_t>& es) {
    std::vector<Mask> cs;
    for (std::size_t e : es) cs.push_back(g.edges[e].color);
    return cs;
  };

  // Simple cycles whose lowest vertex is `s`.
  auto dfs = [&](auto&& self, int s, int at) -> bool {
    for (const Arc& arc : adj[at]) {
      if (arc.to == s && !used.empty() &&
          (used.size() >= 2 || arc.edge != used.front())) {
        used.push_back(arc.edge);
        auto cs = colors_of(used);
        if (std::any_of(cs.begin(), cs.end(),
                        [&](Mask c) { return c != cs.front(); })) {
          found = CouplePath{verts, cs};
          return true;
        }
        used.pop_back();
        continue;
      }
      if (arc.to <= s || on_path[arc.to]) continue;
      verts.push_back(arc.to);
      used.push_back(arc.edge);
      on_path[arc.to] = 1;
      if (self(self, s, arc.to)) return true;
      on_path[arc.to] = 0;
      used.pop_back();
      verts.pop_back();
    }
    return false;
  };

  for (int s = 0; s < g.k && !found; ++s) {
    verts = {s};
    used.clear();
    std::fill(on_path.begin(), on_path.end(), 0);
    on_path[s] = 1;
    dfs(dfs, s, s);
  }
  if (!found) return std::nullopt;

  // Drop the middle vertex of any two consecutive same-colored edges; the
  // shortcut edge exists with the same color by construction of G.
  CouplePath& c = *found;
  for (bool changed = true; changed;) {
    changed = false;
    const std::size_t h = c.colors.size();
    for (std::size_t i = 0; i < h; ++i) {
      const std::size_t j = (i + 1) % h;
      if (c.colors[i] != c.colors[j]) continue;
      const int from = c.vertices[i];
      const int to = c.vertices[(j + 1) % h];
      if (!g.has_edge(from, to, c.colors[i]))
        throw RoundingInvariantError("cycle contraction: shortcut edge missing");
      c.vertices.erase(c.vertices.begin() + static_cast<std::ptrdiff_t>(j));
      c.colors.erase(c.colors.begin() + static_cast<std::ptrdiff_t>(j));
      changed = true;
      break;
    }
  }
  return found;
}

Rational adjust_cycle(const CouplePath& cycle, SolSolution& solution) {
  return apply_couples(couples_of(cycle, true), solution);
}

Rational adjust_path(const CouplePath& path, SolSolution& solution) {
  return apply_couples(couples_of(path, false), solution);
}

bool is_forest(const ColoredMultigraph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.k));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const ColoredEdge& e : g.edges) {
    const int a = find(e.u), b = find(e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::optional<CouplePath> forest_leaf_path(const ColoredMultigraph& g) {
  int start = -1;
  for (int v = 0; v < g.k && start < 0; ++v)
    if (g.degree(v) == 1) start = v;
  if (start < 0) return std::nullopt;
  std::vector<char> members(static_cast<std::size_t>(g.k), 1);
  for (const auto& comp : components(g, members)) {
    if (std::find(comp.begin(), comp.end(), start) == comp.end()) continue;
    for (int v : comp)
      if (v != start && g.degree(v) == 1) return shortest_path(g, start, v);
  }
  return std::nullopt;
}

std::vector<int> PseudoTree::leaves(int root) const {
  std::vector<int> out;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const PseudoTreeNode& n = nodes[id];
    const std::size_t tree_degree = n.children.size() + (n.parent >= 0 ? 1 : 0);
    if (tree_degree <= 1) out.push_back(id);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it)
      stack.push_back(*it);
  }
  return out;
}

PseudoTree pseudo_tree(const ColoredMultigraph& g) {
  return PseudoTreeBuilder(g).build();
}

std::vector<int> clique_vertices_without_outward_edges(
    const ColoredMultigraph& g, const PseudoTreeNode& node) {
  std::vector<int> out;
  for (int v : node.vertices) {
    bool outward = false;
    for (const ColoredEdge& e : g.edges)
      if ((e.u == v || e.v == v) && e.color != node.color) outward = true;
    if (!outward) out.push_back(v);
  }
  return out;
}

Rational adjust_clique_leaf(Mask color, int from, int to,
                            SolSolution& solution) {
  return apply_couples({{color, from, to}}, solution);
}

const char* case_label(RoundingCase c) {
  switch (c) {
    case RoundingCase::kMulticolorCycle: return "I";
    case RoundingCase::kForestPath: return "II";
    case RoundingCase::kCliqueLeaf: return "III-clique";
    case RoundingCase::kPseudoTreePath: return "III-path";
  }
  return "?";
}

std::string trace_line(const RoundingStep& step) {
  std::ostringstream os;
  os << "case=" << case_label(step.kind) << " path=";
  for (std::size_t i = 0; i < step.couples.vertices.size(); ++i)
    os << (i ? "-" : "") << step.couples.vertices[i] + 1;
  if (step.closed) os << "-" << step.couples.vertices.front() + 1;
  os << " colors=";
  for (std::size_t i = 0; i < step.couples.colors.size(); ++i)
    os << (i ? "," : "") << step.couples.colors[i];
  os << " delta=" << step.delta << " fractional=" << step.fractional_before
     << "->" << step.fractional_after;
  return os.str();
}

SolSolution round_to_integer(const SolSolution& solution,
                             const SolSystem& system, RoundingLog* log) {
  std::string why;
  if (!satisfies_constraints(solution, system, &why))
    throw std::invalid_argument("round_to_integer: infeasible input: " + why);

  SolSolution cur = solution;
  std::size_t fractional = fractional_count(cur);
  while (fractional > 0) {
    const ColoredMultigraph g = build_graph(cur, system.k);
    if (g.edges.empty()) invariant_failure("fractional entries but no edges", cur);

    RoundingStep step;
    step.fractional_before = fractional;
    if (auto cycle = find_multicolor_cycle(g)) {
      step.kind = RoundingCase::kMulticolorCycle;
      step.closed = true;
      step.couples = *cycle;
      step.delta = adjust_cycle(*cycle, cur);
    } else if (is_forest(g)) {
      auto path = forest_leaf_path(g);
      if (!path) invariant_failure("forest without a leaf-to-leaf path", cur);
      require_fractional_sum(cur, path->vertices.front(), "leaf");
      require_fractional_sum(cur, path->vertices.back(), "leaf");
      step.kind = RoundingCase::kForestPath;
      step.couples = *path;
      step.delta = adjust_path(*path, cur);
    } else {
      const PseudoTree tree = pseudo_tree(g);
      int root = tree.roots.front();
      for (int r : tree.roots)
        if (tree_has_clique(tree, r)) {
          root = r;
          break;
        }
      const auto leaves = tree.leaves(root);
      const auto clique_leaf =
          std::find_if(leaves.begin(), leaves.end(),
                       [&](int id) { return tree.nodes[id].clique; });
      if (clique_leaf != leaves.end()) {
        const PseudoTreeNode& node = tree.nodes[*clique_leaf];
        if (node.vertices.size() < 3)
          invariant_failure("leaf clique with fewer than three vertices", cur);
        const auto free = clique_vertices_without_outward_edges(g, node);
        if (free.size() < 2)
          invariant_failure(
              "leaf clique with fewer than two vertices lacking outward edges",
              cur);
        require_fractional_sum(cur, free[0], "clique leaf");
        require_fractional_sum(cur, free[1], "clique leaf");
        step.kind = RoundingCase::kCliqueLeaf;
        step.couples = CouplePath{{free[0], free[1]}, {node.color}};
        step.delta = adjust_clique_leaf(node.color, free[0], free[1], cur);
      } else {
        if (leaves.size() < 2)
          invariant_failure("pseudo tree with fewer than two leaves", cur);
        const int a = tree.nodes[leaves[0]].vertices.front();
        const int b = tree.nodes[leaves[1]].vertices.front();
        auto path = shortest_path(g, a, b);
        if (!path) invariant_failure("pseudo-tree leaves are disconnected", cur);
        require_fractional_sum(cur, a, "leaf");
        require_fractional_sum(cur, b, "leaf");
        step.kind = RoundingCase::kPseudoTreePath;
        step.couples = *path;
        step.delta = adjust_path(*path, cur);
      }
    }

    const std::size_t after = fractional_count(cur);
    step.fractional_after = after;
    if (after >= fractional)
      invariant_failure("fractional count did not decrease", cur);
    if (!satisfies_constraints(cur, system, &why))
      invariant_failure("feasibility lost: " + why, cur);
    fractional = after;
    if (log) log->steps.push_back(std::move(step));
  }
  return cur;
}

}  // namespace bkc
