#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bkc/metric.hpp"
#include "bkc/seeding.hpp"

namespace bkc {

// Bit j set <=> covered by ball j (cluster j, 0-based).
using Mask = std::uint32_t;

// Sorted, deduplicated squared distances between every point and every seed.
struct CandidateRadii {
  std::vector<double> values;
};

// One center per cluster slot, given as point indices; repetitions allowed.
struct CenterTuple {
  std::vector<PointIndex> centers;

  int k() const { return static_cast<int>(centers.size()); }
  friend bool operator==(const CenterTuple&, const CenterTuple&) = default;
  friend auto operator<=>(const CenterTuple&, const CenterTuple&) = default;
};

struct Region {
  Mask mask = 0;
  std::size_t count = 0;
  friend bool operator==(const Region&, const Region&) = default;
};

// Point-level coverage for a fixed tuple and radius. `regions` lists each
// nonempty nonzero mask once, ascending by mask.
struct RegionTable {
  int k = 0;
  std::vector<Mask> masks;
  std::vector<Region> regions;
  std::size_t uncovered = 0;

  std::size_t count(Mask mask) const;
};

// n x |S| table of squared point-to-seed distances, computed once per run so
// each feasibility probe is O(nk) instead of O(nkd).
class SeedDistanceTable {
 public:
  SeedDistanceTable(const MetricInstance& instance,
                    std::span<const PointIndex> seeds);

  std::size_t size() const { return n_; }
  std::size_t seed_count() const { return seeds_.size(); }
  const std::vector<PointIndex>& seeds() const { return seeds_; }
  double at(PointIndex p, std::size_t slot) const {
    return d2_[p * seeds_.size() + slot];
  }
  const std::vector<double>& raw() const { return d2_; }

  // Seed slot of each center; throws std::invalid_argument if a center is
  // not a seed.
  std::vector<std::size_t> slots_for(const CenterTuple& tuple) const;

 private:
  std::size_t n_;
  std::vector<PointIndex> seeds_;
  std::vector<double> d2_;
};

CandidateRadii candidate_radii(const MetricInstance& instance,
                               const SeedSet& seeds);
CandidateRadii candidate_radii(const SeedDistanceTable& table);

// Direct version: evaluates dist2 against each center.
RegionTable build_region_table(const MetricInstance& instance,
                               const CenterTuple& tuple, double r2);
// Table version: `slots[j]` is the seed column used as center j.
RegionTable build_region_table(const SeedDistanceTable& table,
                               std::span<const std::size_t> slots, double r2);

// Rebuilds `regions` and `uncovered` from `masks`.
void recount_regions(RegionTable& table);

}  // namespace bkc
