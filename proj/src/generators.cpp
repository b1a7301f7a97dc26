#include "bkc/generators.hpp"

#include <random>
#include <stdexcept>

namespace bkc {

PointCloud fig4_instance(double delta) {
  if (!(delta > 0) || !(delta < 2))
    throw std::invalid_argument("fig4 needs 0 < delta < 2");
  return PointCloud{{0.0, 2.0, 4.0 - delta, 6.0 - delta, 8.0 - 2 * delta,
                     8.0 - 2 * delta},
                    1};
}

PointCloud fig5_instance(double l, double r, double h) {
  if (!(l >= 0) || !(l < 2 * r) || !(2 * r < h))
    throw std::invalid_argument("fig5 needs 0 <= l < 2r < h");
  return PointCloud{{0.0, 0.0, 0.0, 0.0, 0.0, l, 0.0, l, h, 0.0, h, 2 * r}, 2};
}

PointCloud gaussian_instance(std::size_t n, std::size_t d, int k, double spread,
                             std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("gaussian needs n >= 1");
  if (d == 0) throw std::invalid_argument("gaussian needs d >= 1");
  if (k < 1) throw std::invalid_argument("gaussian needs k >= 1");
  if (!(spread >= 0)) throw std::invalid_argument("gaussian needs spread >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-spread, spread);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> means(static_cast<std::size_t>(k) * d);
  for (double& m : means) m = uni(rng);
  PointCloud pc;
  pc.dim = d;
  pc.coords.resize(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const double* mu = means.data() + (i % static_cast<std::size_t>(k)) * d;
    for (std::size_t t = 0; t < d; ++t) pc.coords[i * d + t] = mu[t] + noise(rng);
  }
  return pc;
}

}  // namespace bkc
