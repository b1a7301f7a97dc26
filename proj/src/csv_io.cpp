#include "bkc/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace bkc {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::vector<double>> read_rows(std::istream& in, bool skip_header) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool skipped = !skip_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!skipped) {
      skipped = true;
      continue;
    }
    std::vector<double> row;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      const std::string_view field = trim(rest.substr(0, comma));
      double v = 0;
      const auto* end = field.data() + field.size();
      auto [ptr, ec] = std::from_chars(field.data(), end, v);
      if (field.empty() || ec != std::errc() || ptr != end) {
        std::ostringstream os;
        os << "line " << line_no << ": cannot parse number '" << field << "'";
        throw ParseError(os.str());
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream os;
      os << "line " << line_no << ": expected " << rows.front().size()
         << " columns, found " << row.size();
      throw ParseError(os.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("input has no data rows");
  return rows;
}

}  // namespace

PointCloud read_coordinates_csv(std::istream& in, bool skip_header) {
  const auto rows = read_rows(in, skip_header);
  PointCloud pc;
  pc.dim = rows.front().size();
  pc.coords.reserve(rows.size() * pc.dim);
  for (const auto& r : rows) pc.coords.insert(pc.coords.end(), r.begin(), r.end());
  return pc;
}

DistanceMatrix read_matrix_csv(std::istream& in, bool skip_header) {
  const auto rows = read_rows(in, skip_header);
  DistanceMatrix m;
  m.n = rows.size();
  if (rows.front().size() != m.n)
    throw ParseError("distance matrix must be square");
  m.values.reserve(m.n * m.n);
  for (const auto& r : rows) m.values.insert(m.values.end(), r.begin(), r.end());
  return m;
}

MetricInstance load_instance(std::istream& in, MetricKind kind, Bounds bounds,
                             CapPolicy cap, bool skip_header) {
  if (kind == MetricKind::kCoordinates) {
    PointCloud pc = read_coordinates_csv(in, skip_header);
    return MetricInstance::from_coordinates(std::move(pc.coords), pc.dim,
                                            bounds, cap);
  }
  DistanceMatrix m = read_matrix_csv(in, skip_header);
  return MetricInstance::from_matrix(std::move(m.values), m.n, bounds, cap);
}

MetricInstance load_instance_file(const std::string& path, MetricKind kind,
                                  Bounds bounds, CapPolicy cap,
                                  bool skip_header) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return load_instance(in, kind, bounds, cap, skip_header);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_coordinates_csv(std::ostream& out, const PointCloud& cloud) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t t = 0; t < cloud.dim; ++t)
      out << (t ? "," : "") << format_double(cloud.coords[i * cloud.dim + t]);
    out << '\n';
  }
}

void write_labels_csv(std::ostream& out, const std::vector<int>& labels) {
  out << "point_index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << i << ',' << labels[i] << '\n';
}

}  // namespace bkc
