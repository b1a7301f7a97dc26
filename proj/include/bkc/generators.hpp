#pragma once

#include <cstdint>
#include <vector>

namespace bkc {

struct PointCloud {
  std::vector<double> coords;  // row-major
  std::size_t dim = 0;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
};

// Six collinear points at 0, 2, 4-delta, 6-delta, 8-2*delta, 8-2*delta:
// gaps 2, 2-delta, 2, 2-delta, 0. With k=3 and L=U=2 the optimum radius is 1
// while seeding from the second point forces radius 4-delta.
PointCloud fig4_instance(double delta);

// p1=p2=(0,0), p3=p4=(0,l), p5=(h,0), p6=(h,2r); requires l < 2r < h.
// With k=3, L=U=2, seeding from p1 gives S={p1,p6,p5}, and using S itself as
// the centers costs about h while the optimum is r.
PointCloud fig5_instance(double l, double r, double h);

// n points around k uniformly placed means in [-spread, spread]^d with unit
// Gaussian noise; point i belongs to mean i mod k.
PointCloud gaussian_instance(std::size_t n, std::size_t d, int k, double spread,
                             std::uint64_t seed);

}  // namespace bkc
