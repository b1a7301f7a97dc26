#include "bkc/sol.hpp"

#include <sstream>
#include <stdexcept>

namespace bkc {

const Rational& SolSolution::at(Mask mask, int cluster) const {
  return values.at(VarKey{mask, cluster});
}

Rational& SolSolution::at(Mask mask, int cluster) {
  return values.at(VarKey{mask, cluster});
}

std::optional<SolSystem> build_sol(const RegionTable& table, std::size_t lower,
                                   std::size_t upper) {
  if (table.uncovered > 0) return std::nullopt;
  SolSystem sys;
  sys.k = table.k;
  sys.lower = lower;
  sys.upper = upper;
  sys.regions = table.regions;
  for (const Region& r : sys.regions)
    for (int j = 0; j < sys.k; ++j)
      if (r.mask >> j & 1u) sys.variables.push_back({r.mask, j});
  return sys;
}

namespace {

// Dense phase-one tableau. Rows, in order: one equality per region
// (sum_j x = n_R), one per cluster (sum_R x - w_j = L) and one per cluster
// (w_j + u_j = U - L). Columns: the x variables, then w, then u, then one
// artificial per row, then the right-hand side. All right-hand sides are
// nonnegative, so the artificials form the starting basis.
class PhaseOne {
 public:
  explicit PhaseOne(const SolSystem& sys) {
    const std::size_t nx = sys.variables.size();
    const std::size_t k = static_cast<std::size_t>(sys.k);
    const std::size_t nr = sys.regions.size();
    rows_ = nr + 2 * k;
    structural_ = nx + 2 * k;
    cols_ = structural_ + rows_;
    tab_.assign(rows_, std::vector<Rational>(cols_ + 1, Rational(0)));

    std::map<Mask, std::size_t> region_row;
    for (std::size_t r = 0; r < nr; ++r) {
      region_row[sys.regions[r].mask] = r;
      rhs(r) = Rational(static_cast<std::int64_t>(sys.regions[r].count));
    }
    for (std::size_t v = 0; v < nx; ++v) {
      const VarKey& key = sys.variables[v];
      tab_[region_row.at(key.mask)][v] = 1;
      tab_[nr + static_cast<std::size_t>(key.cluster)][v] = 1;
    }
    const auto lo = static_cast<std::int64_t>(sys.lower);
    const auto hi = static_cast<std::int64_t>(sys.upper);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t crow = nr + j, brow = nr + k + j;
      tab_[crow][nx + j] = -1;  // w_j
      rhs(crow) = lo;
      tab_[brow][nx + j] = 1;       // w_j
      tab_[brow][nx + k + j] = 1;   // u_j
      rhs(brow) = hi - lo;
    }
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      tab_[i][structural_ + i] = 1;
      basis_[i] = structural_ + i;
    }
    // Reduced costs of minimizing the sum of artificials.
    obj_.assign(cols_ + 1, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t c = 0; c <= cols_; ++c)
        if (c < structural_ || c == cols_) obj_[c] -= tab_[i][c];
  }

  bool run() {
    for (;;) {
      std::size_t enter = structural_;
      for (std::size_t c = 0; c < structural_; ++c)
        if (obj_[c].sign() < 0) {
          enter = c;
          break;
        }
      if (enter == structural_) break;

      std::size_t leave = rows_;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (tab_[i][enter].sign() <= 0) continue;
        Rational ratio = rhs(i) / tab_[i][enter];
        if (leave == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      // The phase-one objective is bounded below by zero, so some row
      // always limits the step.
      if (leave == rows_) throw std::logic_error("phase-one simplex unbounded");
      pivot(leave, enter);
    }
    return obj_[cols_].is_zero();
  }

  Rational value_of(std::size_t column) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] == column) return tab_[i][cols_];
    return Rational(0);
  }

 private:
  Rational& rhs(std::size_t row) { return tab_[row][cols_]; }
  const Rational& rhs(std::size_t row) const { return tab_[row][cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = tab_[r][c];
    for (auto& v : tab_[r])
      if (!v.is_zero()) v /= p;
    auto eliminate = [&](std::vector<Rational>& row) {
      const Rational f = row[c];
      if (f.is_zero()) return;
      for (std::size_t t = 0; t <= cols_; ++t)
        if (!tab_[r][t].is_zero()) row[t] -= f * tab_[r][t];
    };
    for (std::size_t i = 0; i < rows_; ++i)
      if (i != r) eliminate(tab_[i]);
    eliminate(obj_);
    basis_[r] = c;
  }

  std::size_t rows_ = 0;
  std::size_t structural_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> obj_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<SolSolution> solve_sol(const SolSystem& system) {
  if (system.lower > system.upper) return std::nullopt;
  PhaseOne lp(system);
  if (!lp.run()) return std::nullopt;
  SolSolution sol;
  for (std::size_t v = 0; v < system.variables.size(); ++v)
    sol.values.emplace(system.variables[v], lp.value_of(v));
  return sol;
}

Rational cluster_sum(const SolSolution& solution, int cluster) {
  Rational s(0);
  for (const auto& [key, value] : solution.values)
    if (key.cluster == cluster) s += value;
  return s;
}

std::size_t fractional_count(const SolSolution& solution) {
  std::size_t c = 0;
  for (const auto& [key, value] : solution.values)
    if (!value.is_integer()) ++c;
  return c;
}

bool is_integral(const SolSolution& solution) {
  return fractional_count(solution) == 0;
}

bool satisfies_constraints(const SolSolution& solution,
                           const SolSystem& system, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (solution.values.size() != system.variables.size())
    return fail("variable count mismatch");
  for (const VarKey& key : system.variables) {
    auto it = solution.values.find(key);
    if (it == solution.values.end()) return fail("missing variable");
    if (it->second.sign() < 0) {
      std::ostringstream os;
      os << "x[" << key.mask << "][" << key.cluster << "] = " << it->second
         << " is negative";
      return fail(os.str());
    }
  }
  for (const Region& r : system.regions) {
    Rational s(0);
    for (int j = 0; j < system.k; ++j)
      if (r.mask >> j & 1u) s += solution.at(r.mask, j);
    if (s != Rational(static_cast<std::int64_t>(r.count))) {
      std::ostringstream os;
      os << "region " << r.mask << " sums to " << s << ", expected "
         << r.count;
      return fail(os.str());
    }
  }
  const Rational lo(static_cast<std::int64_t>(system.lower));
  const Rational hi(static_cast<std::int64_t>(system.upper));
  for (int j = 0; j < system.k; ++j) {
    const Rational s = cluster_sum(solution, j);
    if (s < lo || s > hi) {
      std::ostringstream os;
      os << "cluster " << j << " holds " << s << ", outside [" << system.lower
         << ", " << system.upper << "]";
      return fail(os.str());
    }
  }
  return true;
}

namespace {

// A half-unit move: take 1/2 from x[mask][from] and give it to x[mask][to].
struct HalfMove {
  Mask mask;
  int from;
  int to;
};

class MoveSearch {
 public:
  MoveSearch(const SolSolution& sol, const SolSystem& sys)
      : sol_(sol), sys_(sys) {
    const Rational lo(static_cast<std::int64_t>(sys.lower));
    const Rational hi(static_cast<std::int64_t>(sys.upper));
    for (int j = 0; j < sys.k; ++j) {
      const Rational s = cluster_sum(sol, j);
      can_give_.push_back(s > lo);
      can_take_.push_back(s < hi);
    }
  }

  // Shortest admissible open path first, then cycles.
  std::optional<std::vector<HalfMove>> find() {
    for (int len = 1; len < sys_.k; ++len)
      for (int start = 0; start < sys_.k; ++start)
        if (can_give_[start] && dfs(start, start, 0, len, false))
          return path_;
    for (int len = 2; len <= sys_.k; ++len)
      for (int start = 0; start < sys_.k; ++start)
        if (dfs(start, start, 0, len, true)) return path_;
    return std::nullopt;
  }

 private:
  bool dfs(int start, int at, Mask prev_mask, int remaining, bool cycle) {
    for (const Region& r : sys_.regions) {
      if (!(r.mask >> at & 1u) || r.mask == prev_mask) continue;
      if (sol_.at(r.mask, at) < Rational(1)) continue;
      for (int to = 0; to < sys_.k; ++to) {
        if (to == at || !(r.mask >> to & 1u)) continue;
        const bool closes = to == start;
        if (remaining == 1) {
          const bool ok = cycle ? closes && r.mask != path_.front().mask
                                : !closes && !visited(to) && can_take_[to];
          if (!ok) continue;
          path_.push_back({r.mask, at, to});
          return true;
        }
        if (closes || visited(to)) continue;
        path_.push_back({r.mask, at, to});
        if (dfs(start, to, r.mask, remaining - 1, cycle)) return true;
        path_.pop_back();
      }
    }
    return false;
  }

  bool visited(int v) const {
    for (const HalfMove& m : path_)
      if (m.from == v || m.to == v) return true;
    return false;
  }

  const SolSolution& sol_;
  const SolSystem& sys_;
  std::vector<bool> can_give_;
  std::vector<bool> can_take_;
  std::vector<HalfMove> path_;
};

}  // namespace

std::optional<SolSolution> fractionalize(const SolSolution& solution,
                                         const SolSystem& system) {
  MoveSearch search(solution, system);
  auto moves = search.find();
  if (!moves) return std::nullopt;
  SolSolution out = solution;
  const Rational half(1, 2);
  for (const HalfMove& m : *moves) {
    out.at(m.mask, m.from) -= half;
    out.at(m.mask, m.to) += half;
  }
  return out;
}

}  // namespace bkc
