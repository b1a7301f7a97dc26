#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bkc/coverage.hpp"
#include "bkc/generators.hpp"
#include "bkc/metric.hpp"
#include "bkc/rational.hpp"
#include "bkc/sol.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Any (L, U) with 1 <= L <= floor(n/k) <= ceil(n/k) <= U <= n.
inline bkc::Bounds random_bounds(Rng& rng, std::size_t n, int k) {
  const std::size_t kk = static_cast<std::size_t>(k);
  bkc::Bounds b;
  b.k = k;
  b.lower = uniform(rng, 1, n / kk);
  b.upper = uniform(rng, (n + kk - 1) / kk, n);
  return b;
}

// Points with small integer coordinates (lots of ties and coincidences) or
// continuous ones, chosen at random.
inline std::vector<double> random_coords(Rng& rng, std::size_t n,
                                         std::size_t d) {
  std::vector<double> c(n * d);
  if (rng() % 2) {
    std::uniform_int_distribution<int> grid(-4, 4);
    for (double& v : c) v = grid(rng);
  } else {
    std::uniform_real_distribution<double> box(-10.0, 10.0);
    for (double& v : c) v = box(rng);
  }
  return c;
}

inline bkc::MetricInstance random_instance(Rng& rng, std::size_t n,
                                           std::size_t d, int k) {
  return bkc::MetricInstance::from_coordinates(random_coords(rng, n, d), d,
                                               random_bounds(rng, n, k));
}

// Region table with the given mask per point.
inline bkc::RegionTable table_from_masks(int k, std::vector<bkc::Mask> masks) {
  bkc::RegionTable t;
  t.k = k;
  t.masks = std::move(masks);
  bkc::recount_regions(t);
  return t;
}

// Region table from (mask, count) pairs, points laid out region by region.
inline bkc::RegionTable table_from_counts(
    int k, const std::vector<std::pair<bkc::Mask, std::size_t>>& counts) {
  std::vector<bkc::Mask> masks;
  for (auto [m, c] : counts) masks.insert(masks.end(), c, m);
  return table_from_masks(k, std::move(masks));
}

inline std::vector<int> bits_of(bkc::Mask m) {
  std::vector<int> out;
  for (int j = 0; m >> j; ++j)
    if (m >> j & 1u) out.push_back(j);
  return out;
}

// Brute force over every integer split of every region. Only for tiny
// systems.
inline bool integer_feasible(const bkc::SolSystem& sys) {
  std::vector<long> sums(static_cast<std::size_t>(sys.k), 0);
  auto rec = [&](auto&& self, std::size_t r) -> bool {
    if (r == sys.regions.size()) {
      return std::all_of(sums.begin(), sums.end(), [&](long s) {
        return s >= static_cast<long>(sys.lower) &&
               s <= static_cast<long>(sys.upper);
      });
    }
    const auto clusters = bits_of(sys.regions[r].mask);
    auto split = [&](auto&& inner, std::size_t idx, long left) -> bool {
      const int j = clusters[idx];
      if (idx + 1 == clusters.size()) {
        sums[j] += left;
        const bool ok = self(self, r + 1);
        sums[j] -= left;
        return ok;
      }
      for (long v = 0; v <= left; ++v) {
        sums[j] += v;
        const bool ok = inner(inner, idx + 1, left - v);
        sums[j] -= v;
        if (ok) return true;
      }
      return false;
    };
    return split(split, 0, static_cast<long>(sys.regions[r].count));
  };
  return rec(rec, 0);
}

struct FractionalCase {
  bkc::SolSystem system;
  bkc::SolSolution solution;
};

// Draws several integer assignments of random regions and returns a convex
// combination of them with rational weights, plus the system whose L and U
// are the extreme cluster sums. Convexity keeps the result feasible, and the
// fractional entries form arbitrary graph shapes (multicolor cycles, forests,
// single-color cliques).
inline FractionalCase random_fractional_case(Rng& rng, int k) {
  const bkc::Mask full = (bkc::Mask{1} << k) - 1;
  for (;;) {
    const std::size_t region_count = uniform(rng, 1, std::min<std::size_t>(6, full));
    std::vector<std::pair<bkc::Mask, std::size_t>> counts;
    std::vector<bkc::Mask> used;
    while (counts.size() < region_count) {
      bkc::Mask m = static_cast<bkc::Mask>(uniform(rng, 1, full));
      if (std::find(used.begin(), used.end(), m) != used.end()) continue;
      used.push_back(m);
      counts.emplace_back(m, uniform(rng, 1, 7));
    }
    std::sort(counts.begin(), counts.end());

    const std::size_t scenarios = uniform(rng, 2, 4);
    std::vector<std::vector<std::vector<long>>> split(scenarios);
    for (auto& sc : split) {
      for (auto [m, c] : counts) {
        const auto cl = bits_of(m);
        std::vector<long> part(cl.size(), 0);
        for (std::size_t p = 0; p < c; ++p) ++part[uniform(rng, 0, cl.size() - 1)];
        sc.push_back(part);
      }
    }
    std::vector<long> weights(scenarios);
    long total = 0;
    for (long& w : weights) total += (w = static_cast<long>(uniform(rng, 1, 5)));

    long lo = -1, hi = 0;
    std::size_t n = 0;
    for (auto [m, c] : counts) n += c;
    for (const auto& sc : split) {
      std::vector<long> sums(static_cast<std::size_t>(k), 0);
      for (std::size_t r = 0; r < counts.size(); ++r) {
        const auto cl = bits_of(counts[r].first);
        for (std::size_t i = 0; i < cl.size(); ++i) sums[cl[i]] += sc[r][i];
      }
      for (long s : sums) {
        lo = lo < 0 ? s : std::min(lo, s);
        hi = std::max(hi, s);
      }
    }
    const std::size_t kk = static_cast<std::size_t>(k);
    // Widen to a valid bound chain when possible; skip degenerate draws.
    if (lo < 1 || static_cast<std::size_t>(lo) > n / kk) continue;
    if (static_cast<std::size_t>(hi) < (n + kk - 1) / kk) continue;

    const auto table = table_from_counts(k, counts);
    auto sys = bkc::build_sol(table, static_cast<std::size_t>(lo),
                              static_cast<std::size_t>(hi));
    bkc::SolSolution sol;
    for (std::size_t r = 0; r < counts.size(); ++r) {
      const auto cl = bits_of(counts[r].first);
      for (std::size_t i = 0; i < cl.size(); ++i) {
        bkc::Rational v = 0;
        for (std::size_t s = 0; s < scenarios; ++s)
          v += bkc::Rational(weights[s] * split[s][r][i], total);
        sol.values[bkc::VarKey{counts[r].first, cl[i]}] = v;
      }
    }
    return FractionalCase{*sys, std::move(sol)};
  }
}

}  // namespace testing
