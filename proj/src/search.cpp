#include "bkc/search.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace bkc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

SeedDistanceTable precompute_seed_distances(const MetricInstance& instance,
                                            const SeedSet& seeds) {
  return SeedDistanceTable(instance, seeds.indices);
}

std::optional<FeasibleAssignment> feasible_slots(
    const std::vector<std::size_t>& slots, double r2,
    const FeasibilityContext& ctx) {
  RegionTable table = build_region_table(ctx.table, slots, r2);
  auto system = build_sol(table, ctx.lower, ctx.upper);
  if (!system) return std::nullopt;
  auto fractional = solve_sol(*system);
  if (!fractional) return std::nullopt;
  FeasibleAssignment out;
  out.solution = round_to_integer(*fractional, *system, &out.rounding);
  out.table = std::move(table);
  return out;
}

std::optional<FeasibleAssignment> feasible(const CenterTuple& tuple, double r2,
                                           const FeasibilityContext& ctx) {
  return feasible_slots(ctx.table.slots_for(tuple), r2, ctx);
}

std::optional<RadiusSearchResult> min_feasible_radius_slots(
    const std::vector<std::size_t>& slots, const CandidateRadii& radii,
    const FeasibilityContext& ctx) {
  const auto& v = radii.values;
  if (v.empty()) return std::nullopt;
  RadiusSearchResult res;
  // Invariant: v[hi] feasible (once `best` is set), everything below lo not.
  std::size_t lo = 0, hi = v.size() - 1;
  auto best = feasible_slots(slots, v[hi], ctx);
  ++res.probes;
  if (!best) return std::nullopt;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    auto probe = feasible_slots(slots, v[mid], ctx);
    ++res.probes;
    if (probe) {
      hi = mid;
      best = std::move(probe);
    } else {
      lo = mid + 1;
    }
  }
  res.r2 = v[hi];
  res.assignment = std::move(*best);
  return res;
}

std::optional<RadiusSearchResult> min_feasible_radius(
    const CenterTuple& tuple, const CandidateRadii& radii,
    const FeasibilityContext& ctx) {
  return min_feasible_radius_slots(ctx.table.slots_for(tuple), radii, ctx);
}

std::vector<std::vector<std::size_t>> enumerate_slot_tuples(
    std::size_t seed_count, int k, CentersMode mode) {
  std::vector<std::vector<std::size_t>> out;
  const auto kk = static_cast<std::size_t>(k);
  if (mode == CentersMode::kSeedSet) {
    std::vector<std::size_t> t(kk);
    for (std::size_t j = 0; j < kk; ++j) t[j] = j;
    out.push_back(std::move(t));
    return out;
  }
  std::vector<std::size_t> t(kk, 0);
  for (;;) {
    out.push_back(t);
    // Odometer increment; multisets keep t non-decreasing.
    std::size_t pos = kk;
    while (pos > 0 && t[pos - 1] + 1 == seed_count) --pos;
    if (pos == 0) break;
    ++t[pos - 1];
    for (std::size_t j = pos; j < kk; ++j)
      t[j] = mode == CentersMode::kMultisets ? t[pos - 1] : 0;
  }
  return out;
}

std::vector<CenterTuple> enumerate_tuples(const SeedSet& seeds,
                                          CentersMode mode) {
  std::vector<CenterTuple> out;
  const int k = static_cast<int>(seeds.indices.size());
  for (const auto& slots : enumerate_slot_tuples(seeds.indices.size(), k, mode)) {
    CenterTuple t;
    for (std::size_t s : slots) t.centers.push_back(seeds.indices[s]);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<int> extract_labels(const SolSolution& solution,
                                const RegionTable& table) {
  const std::size_t dense = std::size_t{1} << table.k;
  std::vector<std::vector<std::int64_t>> quota(dense);
  for (const auto& [key, value] : solution.values) {
    if (!value.is_integer() || value.sign() < 0)
      throw std::logic_error("extract_labels: non-integral assignment");
    auto& q = quota[key.mask];
    if (q.empty()) q.assign(static_cast<std::size_t>(table.k), 0);
    q[key.cluster] = value.num();
  }
  std::vector<int> cursor(dense, 0);
  std::vector<int> labels(table.masks.size(), 0);
  for (std::size_t p = 0; p < table.masks.size(); ++p) {
    const Mask m = table.masks[p];
    auto& q = quota[m];
    if (m == 0 || q.empty())
      throw std::logic_error("extract_labels: point outside every region");
    int& j = cursor[m];
    while (j < table.k && q[j] == 0) ++j;
    if (j == table.k)
      throw std::logic_error("extract_labels: region holds more points than assigned");
    --q[j];
    labels[p] = j + 1;
  }
  for (const auto& q : quota)
    for (std::int64_t left : q)
      if (left != 0)
        throw std::logic_error("extract_labels: assigned counts exceed region size");
  return labels;
}

ClusteringResult balanced_kcenter(const MetricInstance& instance,
                                  PointIndex first,
                                  const SearchOptions& options,
                                  SearchStats* stats) {
  SearchStats local;
  SearchStats& st = stats ? *stats : local;

  auto t0 = Clock::now();
  st.seeds = gonzalez_select(instance, first);
  st.seeding_ms = ms_since(t0);

  t0 = Clock::now();
  const SeedDistanceTable table = precompute_seed_distances(instance, st.seeds);
  const CandidateRadii radii = candidate_radii(table);
  st.candidate_count = radii.values.size();
  st.radii_ms = ms_since(t0);

  t0 = Clock::now();
  const FeasibilityContext ctx{table, instance.lower(), instance.upper()};
  const auto tuples =
      enumerate_slot_tuples(table.seed_count(), instance.k(), options.mode);
  std::vector<std::optional<RadiusSearchResult>> per_tuple(tuples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tuples.size(); i = next++)
      per_tuple[i] = min_feasible_radius_slots(tuples[i], radii, ctx);
  };
  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency()
                                          : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, tuples.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Smallest radius wins; ties go to the earliest tuple in enumeration
  // order, which is lexicographic in seed slots.
  std::size_t best = tuples.size();
  st.feasibility_checks = 0;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    if (!per_tuple[i]) {
      // Infeasible at the largest candidate costs exactly one probe.
      ++st.feasibility_checks;
      continue;
    }
    st.feasibility_checks += per_tuple[i]->probes;
    if (best == tuples.size() || per_tuple[i]->r2 < per_tuple[best]->r2)
      best = i;
  }
  st.tuples_evaluated = tuples.size();
  st.search_ms = ms_since(t0);
  if (best == tuples.size())
    throw std::logic_error("no tuple is feasible at the largest candidate radius");

  RadiusSearchResult& win = *per_tuple[best];
  ClusteringResult res;
  for (std::size_t s : tuples[best])
    res.centers.centers.push_back(table.seeds()[s]);
  res.radius2 = win.r2;
  res.radius = std::sqrt(win.r2);
  res.labels = extract_labels(win.assignment.solution, win.assignment.table);
  res.sizes.assign(static_cast<std::size_t>(instance.k()), 0);
  for (int l : res.labels) ++res.sizes[static_cast<std::size_t>(l - 1)];
  res.assignment = std::move(win.assignment.solution);
  st.rounding = std::move(win.assignment.rounding);
  return res;
}

}  // namespace bkc
