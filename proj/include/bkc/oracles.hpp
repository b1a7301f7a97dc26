#pragma once

#include <span>
#include <vector>

#include "bkc/coverage.hpp"
#include "bkc/metric.hpp"

// Ground-truth implementations for tests and the `verify` subcommand. None of
// this is on the production path.
namespace bkc::oracle {

// Point-level feasibility: source -> point (exactly 1), point -> cluster when
// covered, cluster -> sink with lower bound L and capacity U. Solved by the
// usual super-source/super-sink reduction and Dinic's max flow.
bool flow_feasible(const MetricInstance& instance, const CenterTuple& tuple,
                   double r2, std::size_t lower, std::size_t upper);

struct Ball {
  std::vector<double> center;
  double radius = 0.0;
};

// Smallest enclosing ball of `count` points of dimension `dim` stored
// row-major in `coords` (Welzl's move-to-front recursion).
Ball min_enclosing_ball(std::span<const double> coords, std::size_t dim);

struct OptimalPartition {
  double radius = 0.0;
  std::vector<std::vector<PointIndex>> groups;  // ordered by first member
};

inline constexpr std::size_t kBruteForceMaxPoints = 12;

// Exact optimum over all partitions into k groups with sizes in [L, U].
// Coordinates: continuous centers (minimum enclosing ball per group).
// Matrices: best in-group center. Throws std::invalid_argument when
// n > 12 or k > 3.
OptimalPartition brute_force_optimum(const MetricInstance& instance);

// Same enumeration with the size bounds dropped (plain k-center).
OptimalPartition brute_force_kcenter(const MetricInstance& instance);

}  // namespace bkc::oracle
