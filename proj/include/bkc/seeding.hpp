#pragma once

#include <vector>

#include "bkc/metric.hpp"

namespace bkc {

// Farthest-first traversal result: k seed indices in selection order and
// every point's squared distance to its nearest seed.
struct SeedSet {
  std::vector<PointIndex> indices;
  std::vector<double> min_dist2;
};

// Gonzalez seeding starting from `first`. Each further seed is the point
// with the largest squared distance to the seeds chosen so far; ties go to
// the lowest index, and already-chosen seeds are never re-picked (matters
// only when every remaining point coincides with a seed).
SeedSet gonzalez_select(const MetricInstance& instance, PointIndex first = 0);

}  // namespace bkc
