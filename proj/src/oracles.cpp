#include "bkc/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>

namespace bkc::oracle {

namespace {

class Dinic {
 public:
  explicit Dinic(std::size_t nodes) : adj_(nodes), level_(nodes), it_(nodes) {}

  void add_arc(std::size_t from, std::size_t to, std::int64_t cap) {
    adj_[from].push_back({to, adj_[to].size(), cap});
    adj_[to].push_back({from, adj_[from].size() - 1, 0});
  }

  std::int64_t max_flow(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max()))
        total += f;
    }
    return total;
  }

 private:
  struct Arc {
    std::size_t to;
    std::size_t rev;
    std::int64_t cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (const Arc& a : adj_[v])
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          q.push(a.to);
        }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t v, std::size_t t, std::int64_t f) {
    if (v == t) return f;
    for (std::size_t& i = it_[v]; i < adj_[v].size(); ++i) {
      Arc& a = adj_[v][i];
      if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
      if (std::int64_t d = dfs(a.to, t, std::min(f, a.cap))) {
        a.cap -= d;
        adj_[a.to][a.rev].cap += d;
        return d;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

double sq(double x) { return x * x; }

double dist2_to(const std::vector<double>& c, const double* p,
                std::size_t dim) {
  double s = 0;
  for (std::size_t t = 0; t < dim; ++t) s += sq(c[t] - p[t]);
  return s;
}

// Ball with every point of `r` on its boundary, centered in their affine
// hull. nullopt when the points are affinely dependent.
std::optional<Ball> circumball(const std::vector<const double*>& r,
                               std::size_t dim) {
  Ball b;
  if (r.empty()) {
    b.center.assign(dim, 0.0);
    b.radius = -1.0;  // contains nothing
    return b;
  }
  const double* q0 = r[0];
  const std::size_t m = r.size() - 1;
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double dot = 0;
      for (std::size_t t = 0; t < dim; ++t)
        dot += (r[i + 1][t] - q0[t]) * (r[j + 1][t] - q0[t]);
      a[i][j] = 2 * dot;
    }
    double nn = 0;
    for (std::size_t t = 0; t < dim; ++t) nn += sq(r[i + 1][t] - q0[t]);
    a[i][m] = nn;
  }
  // Gauss-Jordan with partial pivoting.
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < m; ++i)
      if (std::abs(a[i][col]) > std::abs(a[piv][col])) piv = i;
    if (std::abs(a[piv][col]) < 1e-12) return std::nullopt;
    std::swap(a[piv], a[col]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == col) continue;
      const double f = a[i][col] / a[col][col];
      for (std::size_t j = col; j <= m; ++j) a[i][j] -= f * a[col][j];
    }
  }
  b.center.assign(q0, q0 + dim);
  for (std::size_t i = 0; i < m; ++i) {
    const double lambda = a[i][m] / a[i][i];
    for (std::size_t t = 0; t < dim; ++t)
      b.center[t] += lambda * (r[i + 1][t] - q0[t]);
  }
  double r2 = 0;
  for (const double* q : r) r2 = std::max(r2, dist2_to(b.center, q, dim));
  b.radius = std::sqrt(r2);
  return b;
}

bool contains(const Ball& b, const double* p, std::size_t dim) {
  if (b.radius < 0) return false;
  const double r2 = sq(b.radius);
  return dist2_to(b.center, p, dim) <= r2 * (1 + 1e-12) + 1e-18;
}

Ball welzl(std::vector<const double*>& pts, std::size_t n,
           std::vector<const double*>& boundary, std::size_t dim) {
  if (n == 0 || boundary.size() == dim + 1) {
    auto b = circumball(boundary, dim);
    while (!b) {
      // Degenerate support; only reachable through rounding noise.
      std::vector<const double*> fewer(boundary.begin(), boundary.end() - 1);
      b = circumball(fewer, dim);
    }
    return *b;
  }
  const double* p = pts[n - 1];
  Ball d = welzl(pts, n - 1, boundary, dim);
  if (contains(d, p, dim)) return d;
  boundary.push_back(p);
  d = welzl(pts, n - 1, boundary, dim);
  boundary.pop_back();
  return d;
}

using SubsetMask = std::uint32_t;

struct PartitionDp {
  std::size_t n;
  int k;
  std::size_t lower, upper;
  std::vector<double> rad;  // per-subset radius, NaN if not needed
  std::vector<double> memo;
  std::vector<SubsetMask> choice;

  double solve(SubsetMask rem, int groups) {
    const std::size_t key = static_cast<std::size_t>(rem) * (k + 1) + groups;
    if (!std::isnan(memo[key])) return memo[key];
    double best = std::numeric_limits<double>::infinity();
    SubsetMask pick = 0;
    const std::size_t size = static_cast<std::size_t>(std::popcount(rem));
    if (groups == 1) {
      if (size >= lower && size <= upper) {
        best = rad[rem];
        pick = rem;
      }
    } else if (size >= lower * groups && size <= upper * groups) {
      const SubsetMask low = rem & (~rem + 1);
      const SubsetMask rest = rem ^ low;
      // Groups are unlabeled: the group holding the lowest remaining point
      // is chosen first.
      for (SubsetMask sub = rest;; sub = (sub - 1) & rest) {
        const SubsetMask g = sub | low;
        const std::size_t gs = static_cast<std::size_t>(std::popcount(g));
        if (gs >= lower && gs <= upper) {
          const double v = std::max(rad[g], solve(rem ^ g, groups - 1));
          if (v < best) {
            best = v;
            pick = g;
          }
        }
        if (sub == 0) break;
      }
    }
    memo[key] = best;
    choice[key] = pick;
    return best;
  }
};

OptimalPartition brute_force(const MetricInstance& inst, std::size_t lower,
                             std::size_t upper) {
  const std::size_t n = inst.size();
  const int k = std::min<int>(inst.k(), static_cast<int>(n));
  if (n > kBruteForceMaxPoints || inst.k() > 3)
    throw std::invalid_argument("brute force oracle needs n <= 12 and k <= 3");

  const std::size_t subsets = std::size_t{1} << n;
  PartitionDp dp{n, k, lower, upper, std::vector<double>(subsets, 0.0),
                 std::vector<double>(subsets * (k + 1),
                                     std::numeric_limits<double>::quiet_NaN()),
                 std::vector<SubsetMask>(subsets * (k + 1), 0)};
  for (SubsetMask s = 1; s < subsets; ++s) {
    std::vector<PointIndex> members;
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1u) members.push_back(i);
    if (members.size() < lower || members.size() > upper) continue;
    if (inst.kind() == MetricKind::kCoordinates) {
      std::vector<double> coords;
      for (PointIndex i : members)
        coords.insert(coords.end(), inst.point(i), inst.point(i) + inst.dim());
      dp.rad[s] = min_enclosing_ball(coords, inst.dim()).radius;
    } else {
      double best = std::numeric_limits<double>::infinity();
      for (PointIndex c : members) {
        double ecc = 0;
        for (PointIndex p : members) ecc = std::max(ecc, inst.dist2(c, p));
        best = std::min(best, ecc);
      }
      dp.rad[s] = std::sqrt(best);
    }
  }

  const SubsetMask all = static_cast<SubsetMask>(subsets - 1);
  OptimalPartition out;
  out.radius = dp.solve(all, k);
  if (std::isinf(out.radius))
    throw std::logic_error("no partition satisfies the size bounds");
  SubsetMask rem = all;
  for (int g = k; g >= 1; --g) {
    const SubsetMask pick = dp.choice[static_cast<std::size_t>(rem) * (k + 1) + g];
    std::vector<PointIndex> group;
    for (std::size_t i = 0; i < n; ++i)
      if (pick >> i & 1u) group.push_back(i);
    out.groups.push_back(std::move(group));
    rem ^= pick;
  }
  return out;
}

}  // namespace

bool flow_feasible(const MetricInstance& instance, const CenterTuple& tuple,
                   double r2, std::size_t lower, std::size_t upper) {
  const std::size_t n = instance.size();
  const std::size_t k = tuple.centers.size();
  if (lower > upper) return false;
  // Nodes: s, points, clusters, t, then the super pair.
  const std::size_t s = 0, t = n + k + 1, ss = n + k + 2, tt = n + k + 3;
  auto point = [](std::size_t p) { return 1 + p; };
  auto cluster = [n](std::size_t j) { return 1 + n + j; };
  Dinic g(n + k + 4);
  std::vector<std::int64_t> excess(n + k + 4, 0);

  // s -> p with lower = upper = 1: residual capacity 0, only the excess.
  for (std::size_t p = 0; p < n; ++p) {
    excess[point(p)] += 1;
    excess[s] -= 1;
    for (std::size_t j = 0; j < k; ++j)
      if (instance.dist2(p, tuple.centers[j]) <= r2) g.add_arc(point(p), cluster(j), 1);
  }
  for (std::size_t j = 0; j < k; ++j) {
    g.add_arc(cluster(j), t, static_cast<std::int64_t>(upper - lower));
    excess[t] += static_cast<std::int64_t>(lower);
    excess[cluster(j)] -= static_cast<std::int64_t>(lower);
  }
  g.add_arc(t, s, static_cast<std::int64_t>(n) * 2 + 1);

  std::int64_t need = 0;
  for (std::size_t v = 0; v < excess.size(); ++v) {
    if (excess[v] > 0) {
      g.add_arc(ss, v, excess[v]);
      need += excess[v];
    } else if (excess[v] < 0) {
      g.add_arc(v, tt, -excess[v]);
    }
  }
  return g.max_flow(ss, tt) == need;
}

Ball min_enclosing_ball(std::span<const double> coords, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  std::vector<const double*> pts;
  for (std::size_t i = 0; i + dim <= coords.size(); i += dim)
    pts.push_back(coords.data() + i);
  if (pts.empty()) return Ball{std::vector<double>(dim, 0.0), 0.0};
  std::vector<const double*> boundary;
  return welzl(pts, pts.size(), boundary, dim);
}

OptimalPartition brute_force_optimum(const MetricInstance& instance) {
  return brute_force(instance, instance.lower(), instance.upper());
}

OptimalPartition brute_force_kcenter(const MetricInstance& instance) {
  return brute_force(instance, 1, instance.size());
}

}  // namespace bkc::oracle
