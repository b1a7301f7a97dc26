#pragma once

#include <optional>
#include <vector>

#include "bkc/coverage.hpp"
#include "bkc/rounding.hpp"
#include "bkc/seeding.hpp"
#include "bkc/sol.hpp"

namespace bkc {

enum class CentersMode {
  kMultisets,      // combinations with repetition over S (default)
  kOrderedTuples,  // all |S|^k ordered tuples
  kSeedSet,        // the single tuple (s_1, ..., s_k)
};

struct SearchOptions {
  CentersMode mode = CentersMode::kMultisets;
  unsigned threads = 1;  // 0 = hardware concurrency
};

// Read-only state shared by every feasibility probe of one run.
struct FeasibilityContext {
  const SeedDistanceTable& table;
  std::size_t lower;
  std::size_t upper;
};

struct FeasibleAssignment {
  SolSolution solution;  // integral
  RegionTable table;
  RoundingLog rounding;
};

struct ClusteringResult {
  CenterTuple centers;
  double radius = 0.0;
  double radius2 = 0.0;
  std::vector<int> labels;  // 1-based cluster per point
  std::vector<std::size_t> sizes;
  SolSolution assignment;
};

struct SearchStats {
  SeedSet seeds;
  std::size_t candidate_count = 0;
  std::size_t tuples_evaluated = 0;
  std::size_t feasibility_checks = 0;
  double seeding_ms = 0;
  double radii_ms = 0;
  double search_ms = 0;
  RoundingLog rounding;  // adjustments that produced the winning assignment
};

// n x k table of squared distances from every point to every seed.
SeedDistanceTable precompute_seed_distances(const MetricInstance& instance,
                                            const SeedSet& seeds);

// Region table -> SoL -> exact solve -> rounding. nullopt when the balls of
// squared radius r2 around the tuple admit no balanced assignment.
std::optional<FeasibleAssignment> feasible(const CenterTuple& tuple, double r2,
                                           const FeasibilityContext& ctx);
std::optional<FeasibleAssignment> feasible_slots(
    const std::vector<std::size_t>& slots, double r2,
    const FeasibilityContext& ctx);

struct RadiusSearchResult {
  double r2 = 0.0;
  FeasibleAssignment assignment;
  std::size_t probes = 0;
};

// Lower-bound binary search for the smallest candidate at which the tuple
// is feasible. nullopt if infeasible even at the largest candidate.
std::optional<RadiusSearchResult> min_feasible_radius(
    const CenterTuple& tuple, const CandidateRadii& radii,
    const FeasibilityContext& ctx);
std::optional<RadiusSearchResult> min_feasible_radius_slots(
    const std::vector<std::size_t>& slots, const CandidateRadii& radii,
    const FeasibilityContext& ctx);

// Seed-slot tuples in ascending lexicographic order.
std::vector<std::vector<std::size_t>> enumerate_slot_tuples(
    std::size_t seed_count, int k, CentersMode mode);
// The same tuples as point indices. Multisets by default.
std::vector<CenterTuple> enumerate_tuples(
    const SeedSet& seeds, CentersMode mode = CentersMode::kMultisets);

// Deals the points of each region, in ascending index order, to the
// region's clusters in ascending cluster order, x[mask][j] points each.
// Returns 1-based labels.
std::vector<int> extract_labels(const SolSolution& solution,
                                const RegionTable& table);

ClusteringResult balanced_kcenter(const MetricInstance& instance,
                                  PointIndex first = 0,
                                  const SearchOptions& options = {},
                                  SearchStats* stats = nullptr);

}  // namespace bkc
