#include "bkc/coverage.hpp"

#include <algorithm>
#include <stdexcept>

namespace bkc {

namespace {

CandidateRadii sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return CandidateRadii{std::move(v)};
}

}  // namespace

std::size_t RegionTable::count(Mask mask) const {
  auto it = std::lower_bound(
      regions.begin(), regions.end(), mask,
      [](const Region& r, Mask m) { return r.mask < m; });
  return it != regions.end() && it->mask == mask ? it->count : 0;
}

SeedDistanceTable::SeedDistanceTable(const MetricInstance& instance,
                                     std::span<const PointIndex> seeds)
    : n_(instance.size()), seeds_(seeds.begin(), seeds.end()) {
  const std::size_t s = seeds_.size();
  d2_.resize(n_ * s);
  for (std::size_t p = 0; p < n_; ++p)
    for (std::size_t j = 0; j < s; ++j)
      d2_[p * s + j] = instance.dist2(p, seeds_[j]);
}

std::vector<std::size_t> SeedDistanceTable::slots_for(
    const CenterTuple& tuple) const {
  std::vector<std::size_t> slots;
  slots.reserve(tuple.centers.size());
  for (PointIndex c : tuple.centers) {
    auto it = std::find(seeds_.begin(), seeds_.end(), c);
    if (it == seeds_.end())
      throw std::invalid_argument("tuple center is not a seed");
    slots.push_back(static_cast<std::size_t>(it - seeds_.begin()));
  }
  return slots;
}

CandidateRadii candidate_radii(const MetricInstance& instance,
                               const SeedSet& seeds) {
  return candidate_radii(SeedDistanceTable(instance, seeds.indices));
}

CandidateRadii candidate_radii(const SeedDistanceTable& table) {
  return sorted_unique(table.raw());
}

void recount_regions(RegionTable& table) {
  std::vector<std::size_t> dense(std::size_t{1} << table.k, 0);
  for (Mask m : table.masks) ++dense[m];
  table.uncovered = dense[0];
  table.regions.clear();
  for (std::size_t m = 1; m < dense.size(); ++m)
    if (dense[m] > 0) table.regions.push_back({static_cast<Mask>(m), dense[m]});
}

RegionTable build_region_table(const MetricInstance& instance,
                               const CenterTuple& tuple, double r2) {
  RegionTable t;
  t.k = tuple.k();
  t.masks.assign(instance.size(), 0);
  for (std::size_t p = 0; p < instance.size(); ++p) {
    Mask m = 0;
    for (int j = 0; j < t.k; ++j)
      if (instance.dist2(p, tuple.centers[j]) <= r2) m |= Mask{1} << j;
    t.masks[p] = m;
  }
  recount_regions(t);
  return t;
}

RegionTable build_region_table(const SeedDistanceTable& table,
                               std::span<const std::size_t> slots, double r2) {
  RegionTable t;
  t.k = static_cast<int>(slots.size());
  const std::size_t n = table.size();
  const std::size_t s = table.seed_count();
  const double* d2 = table.raw().data();
  t.masks.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double* row = d2 + p * s;
    Mask m = 0;
    for (int j = 0; j < t.k; ++j)
      if (row[slots[j]] <= r2) m |= Mask{1} << j;
    t.masks[p] = m;
  }
  recount_regions(t);
  return t;
}

}  // namespace bkc
