#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bkc/generators.hpp"
#include "bkc/metric.hpp"

namespace bkc {

// One point per row, d numeric columns. Blank lines are ignored. Throws
// ParseError on ragged rows or unparsable fields.
PointCloud read_coordinates_csv(std::istream& in, bool skip_header = false);

// n rows of n numeric columns.
struct DistanceMatrix {
  std::vector<double> values;
  std::size_t n = 0;
};
DistanceMatrix read_matrix_csv(std::istream& in, bool skip_header = false);

// Parses a coordinate or matrix file and validates it into an instance.
MetricInstance load_instance(std::istream& in, MetricKind kind, Bounds bounds,
                             CapPolicy cap = {}, bool skip_header = false);
MetricInstance load_instance_file(const std::string& path, MetricKind kind,
                                  Bounds bounds, CapPolicy cap = {},
                                  bool skip_header = false);

// Shortest round-trip decimal representation.
std::string format_double(double v);

void write_coordinates_csv(std::ostream& out, const PointCloud& cloud);

// Header "point_index,label", 0-based point indices, 1-based labels.
void write_labels_csv(std::ostream& out, const std::vector<int>& labels);

}  // namespace bkc
