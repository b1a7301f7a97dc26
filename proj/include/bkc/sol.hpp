#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bkc/coverage.hpp"
#include "bkc/rational.hpp"

namespace bkc {

// Unknown x[mask][cluster]: how many points of region `mask` go to
// `cluster` (0-based). Ordered by mask, then cluster.
struct VarKey {
  Mask mask = 0;
  int cluster = 0;
  friend auto operator<=>(const VarKey&, const VarKey&) = default;
};

// Region totals (one equality per region) and per-cluster bounds
// L <= sum of x[.][j] <= U over the region->cluster count variables.
struct SolSystem {
  int k = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::vector<Region> regions;
  std::vector<VarKey> variables;

  std::size_t equality_count() const { return regions.size(); }
  std::size_t bound_count() const { return static_cast<std::size_t>(k); }
};

struct SolSolution {
  std::map<VarKey, Rational> values;

  // Throws std::out_of_range for keys that are not variables.
  const Rational& at(Mask mask, int cluster) const;
  Rational& at(Mask mask, int cluster);
};

// nullopt when the table leaves some point uncovered.
std::optional<SolSystem> build_sol(const RegionTable& table, std::size_t lower,
                                   std::size_t upper);

// Exact phase-one simplex (Bland's rule) over rationals. Returns a basic
// feasible solution or nullopt when the system has none. Deterministic.
std::optional<SolSolution> solve_sol(const SolSystem& system);

// Moves 1/2 of a unit along a cluster path whose endpoints have slack, or
// around a cluster cycle, producing a feasible solution with at least two
// fractional entries. nullopt when no such move exists. Expects an integral
// feasible input.
std::optional<SolSolution> fractionalize(const SolSolution& solution,
                                         const SolSystem& system);

Rational cluster_sum(const SolSolution& solution, int cluster);
std::size_t fractional_count(const SolSolution& solution);
bool is_integral(const SolSolution& solution);

// Checks nonnegativity, region totals and cluster bounds. On failure,
// writes a description to `why` when given.
bool satisfies_constraints(const SolSolution& solution,
                           const SolSystem& system,
                           std::string* why = nullptr);

}  // namespace bkc
