#include "bkc/seeding.hpp"

#include <algorithm>
#include <stdexcept>

namespace bkc {

SeedSet gonzalez_select(const MetricInstance& instance, PointIndex first) {
  const std::size_t n = instance.size();
  const auto k = static_cast<std::size_t>(instance.k());
  if (first >= n) throw std::out_of_range("first seed index out of range");

  SeedSet seeds;
  seeds.indices.reserve(k);
  seeds.min_dist2.resize(n);
  std::vector<char> chosen(n, 0);

  seeds.indices.push_back(first);
  chosen[first] = 1;
  for (std::size_t p = 0; p < n; ++p)
    seeds.min_dist2[p] = instance.dist2(p, first);

  while (seeds.indices.size() < k) {
    std::size_t best = n;
    double best_d2 = -1.0;
    for (std::size_t p = 0; p < n; ++p) {
      if (chosen[p]) continue;
      if (seeds.min_dist2[p] > best_d2) {
        best_d2 = seeds.min_dist2[p];
        best = p;
      }
    }
    // n >= k is guaranteed by L >= 1, so an unchosen point always exists.
    seeds.indices.push_back(best);
    chosen[best] = 1;
    for (std::size_t p = 0; p < n; ++p)
      seeds.min_dist2[p] = std::min(seeds.min_dist2[p], instance.dist2(p, best));
  }
  return seeds;
}

}  // namespace bkc
