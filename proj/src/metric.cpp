#include "bkc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bkc {

void validate_bounds(std::size_t n, const Bounds& b, const CapPolicy& cap) {
  if (b.k < 1) throw BoundsError("k must be at least 1");
  if (b.k > kAbsoluteMaxK) {
    std::ostringstream os;
    os << "k=" << b.k << " exceeds the hard limit " << kAbsoluteMaxK;
    throw CapError(os.str());
  }
  if (b.k > cap.max_k && !cap.accept_exponential_work) {
    std::ostringstream os;
    os << "k=" << b.k << " exceeds the cap " << cap.max_k
       << " (tuple enumeration is exponential in k; pass the override to "
          "accept that)";
    throw CapError(os.str());
  }
  if (n == 0) throw BoundsError("instance has no points");
  const std::size_t k = static_cast<std::size_t>(b.k);
  const std::size_t floor_nk = n / k;
  const std::size_t ceil_nk = (n + k - 1) / k;
  if (b.lower < 1 || b.lower > floor_nk || b.upper < ceil_nk || b.upper > n) {
    std::ostringstream os;
    os << "bounds violate 1 <= L <= floor(n/k) <= ceil(n/k) <= U <= n: n=" << n
       << " k=" << k << " L=" << b.lower << " U=" << b.upper;
    throw BoundsError(os.str());
  }
}

Bounds slack_bounds(std::size_t n, int k, double slack) {
  const std::size_t kk = static_cast<std::size_t>(std::max(k, 1));
  const auto pad_lo = static_cast<std::size_t>(std::floor(n * slack));
  const auto pad_hi = static_cast<std::size_t>(std::ceil(n * slack));
  const std::size_t floor_nk = n / kk;
  const std::size_t ceil_nk = (n + kk - 1) / kk;
  Bounds b;
  b.k = k;
  b.lower = floor_nk > pad_lo ? floor_nk - pad_lo : 1;
  b.lower = std::clamp<std::size_t>(b.lower, 1, std::max<std::size_t>(floor_nk, 1));
  b.upper = std::min(ceil_nk + pad_hi, n);
  return b;
}

MetricInstance MetricInstance::from_coordinates(std::vector<double> coords,
                                                std::size_t dim, Bounds bounds,
                                                CapPolicy cap) {
  if (dim == 0) throw ParseError("coordinate instance needs dimension >= 1");
  if (coords.size() % dim != 0)
    throw ParseError("coordinate count is not a multiple of the dimension");
  for (double v : coords)
    if (!std::isfinite(v)) throw ParseError("non-finite coordinate");
  const std::size_t n = coords.size() / dim;
  validate_bounds(n, bounds, cap);
  return MetricInstance(MetricKind::kCoordinates, std::move(coords), n, dim,
                        bounds);
}

MetricInstance MetricInstance::from_matrix(std::vector<double> dist,
                                           std::size_t n, Bounds bounds,
                                           CapPolicy cap) {
  if (dist.size() != n * n) throw ParseError("distance matrix is not n x n");
  for (double v : dist)
    if (!std::isfinite(v) || v < 0)
      throw ParseError("distance matrix entries must be finite and >= 0");
  validate_bounds(n, bounds, cap);
  return MetricInstance(MetricKind::kMatrix, std::move(dist), n, 0, bounds);
}

double MetricInstance::dist2(PointIndex i, PointIndex j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("point index out of range");
  if (kind_ == MetricKind::kMatrix) {
    // Symmetrize by reading the upper triangle so dist2(i,j) == dist2(j,i)
    // bit for bit even if the caller's matrix is slightly asymmetric.
    const std::size_t a = std::min(i, j), b = std::max(i, j);
    const double d = data_[a * n_ + b];
    return a == b ? 0.0 : d * d;
  }
  // p - q == -(q - p) exactly, so this is symmetric without reordering.
  const double* p = data_.data() + i * dim_;
  const double* q = data_.data() + j * dim_;
  double s = 0.0;
  for (std::size_t t = 0; t < dim_; ++t) {
    const double diff = p[t] - q[t];
    s += diff * diff;
  }
  return s;
}

}  // namespace bkc
