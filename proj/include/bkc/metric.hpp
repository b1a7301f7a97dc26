#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkc {

// Exception hierarchy. The CLI maps each class to a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unparsable CSV, ragged rows, non-square matrix.
class ParseError : public Error {
 public:
  using Error::Error;
};

// k, L, U violate 1 <= L <= floor(n/k) <= ceil(n/k) <= U <= n.
class BoundsError : public Error {
 public:
  using Error::Error;
};

// k exceeds the configured cap without the explicit override.
class CapError : public Error {
 public:
  using Error::Error;
};

using PointIndex = std::size_t;

inline constexpr int kDefaultMaxK = 6;
// Region masks are 32-bit and the region table is dense in 2^k, so even the
// override cannot go past this.
inline constexpr int kAbsoluteMaxK = 16;

struct Bounds {
  int k = 1;
  std::size_t lower = 1;
  std::size_t upper = 1;
};

struct CapPolicy {
  int max_k = kDefaultMaxK;
  bool accept_exponential_work = false;
};

enum class MetricKind { kCoordinates, kMatrix };

// A validated balanced k-center problem: the point set (row-major
// coordinates or a full distance matrix) plus k, L, U. Immutable after
// construction.
//
// Matrix inputs are trusted to be symmetric with zero diagonal and to obey
// the triangle inequality; none of that is checked. A non-metric matrix voids
// the approximation bound but nothing else.
class MetricInstance {
 public:
  static MetricInstance from_coordinates(std::vector<double> coords,
                                         std::size_t dim, Bounds bounds,
                                         CapPolicy cap = {});
  static MetricInstance from_matrix(std::vector<double> dist, std::size_t n,
                                    Bounds bounds, CapPolicy cap = {});

  MetricKind kind() const { return kind_; }
  std::size_t size() const { return n_; }
  // 0 for matrix instances.
  std::size_t dim() const { return dim_; }
  const Bounds& bounds() const { return bounds_; }
  int k() const { return bounds_.k; }
  std::size_t lower() const { return bounds_.lower; }
  std::size_t upper() const { return bounds_.upper; }

  // Coordinate instances only: pointer to the dim() values of point i.
  const double* point(PointIndex i) const { return data_.data() + i * dim_; }
  // Raw storage: n*dim coordinates or n*n distances, row-major.
  const std::vector<double>& data() const { return data_; }

  // Squared distance. For coordinates this is the squared Euclidean norm of
  // the difference, summed in coordinate order; for matrices the squared
  // matrix entry. Every coverage test and every candidate radius goes
  // through this function so comparisons are exact.
  double dist2(PointIndex i, PointIndex j) const;

 private:
  MetricInstance(MetricKind kind, std::vector<double> data, std::size_t n,
                 std::size_t dim, Bounds bounds)
      : kind_(kind), data_(std::move(data)), n_(n), dim_(dim),
        bounds_(bounds) {}

  MetricKind kind_;
  std::vector<double> data_;
  std::size_t n_;
  std::size_t dim_;
  Bounds bounds_;
};

// Throws CapError / BoundsError when (n, bounds) cannot describe a valid
// instance.
void validate_bounds(std::size_t n, const Bounds& bounds, const CapPolicy& cap);

// Default (L, U) for n points in k clusters with a relative slack, the form
// used by the benchmark: L = floor(n/k) - floor(n*slack),
// U = ceil(n/k) + ceil(n*slack), clamped into the valid range.
Bounds slack_bounds(std::size_t n, int k, double slack);

}  // namespace bkc
