#include "bkc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "bkc/csv_io.hpp"
#include "bkc/generators.hpp"
#include "bkc/oracles.hpp"

namespace bkc::cli {

namespace {

struct InstanceFlags {
  std::string input;
  std::string metric = "coords";
  int k = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool header = false;
  bool allow_large_k = false;
  int max_k = kDefaultMaxK;
};

struct SearchFlags {
  PointIndex first = 0;
  std::string centers_mode = "tuples";
  unsigned threads = 1;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f) {
  cmd->add_option("--input", f.input, "CSV file (coordinates or matrix)")->required();
  cmd->add_option("--metric", f.metric, "coords | matrix")
      ->check(CLI::IsMember({"coords", "matrix"}));
  cmd->add_option("--k", f.k, "number of clusters")->required();
  cmd->add_option("--lower", f.lower, "minimum cluster size L")->required();
  cmd->add_option("--upper", f.upper, "maximum cluster size U")->required();
  cmd->add_flag("--header", f.header, "skip one header row");
  cmd->add_option("--max-k", f.max_k, "cap on k");
  cmd->add_flag("--allow-large-k", f.allow_large_k,
                "accept work exponential in k above the cap");
}

void add_search_flags(CLI::App* cmd, SearchFlags& f) {
  cmd->add_option("--first", f.first, "index of the first seed (0-based)");
  cmd->add_option("--centers-mode", f.centers_mode,
                  "tuples (multisets over S) | ordered (all of S^k) | seed-set")
      ->check(CLI::IsMember({"tuples", "ordered", "seed-set"}));
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

CentersMode parse_mode(const std::string& s) {
  if (s == "seed-set") return CentersMode::kSeedSet;
  if (s == "ordered") return CentersMode::kOrderedTuples;
  return CentersMode::kMultisets;
}

MetricInstance load(const InstanceFlags& f) {
  const Bounds b{f.k, f.lower, f.upper};
  const CapPolicy cap{f.max_k, f.allow_large_k};
  return load_instance_file(
      f.input, f.metric == "matrix" ? MetricKind::kMatrix : MetricKind::kCoordinates,
      b, cap, f.header);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot write " + path);
  os << text;
}

std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t v = 0;
    std::istringstream ts(tok);
    if (!(ts >> v) || v == 0) throw ParseError("bad size '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("--sizes is empty");
  return out;
}

// --- solve -----------------------------------------------------------------

struct SolveFlags {
  InstanceFlags inst;
  SearchFlags search;
  std::string output;
  std::string report;
  std::string format = "csv";
  bool trace = false;
};

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  const MetricInstance inst = load(f.inst);
  if (f.search.first >= inst.size()) throw BoundsError("--first out of range");
  SearchOptions opt{parse_mode(f.search.centers_mode), f.search.threads};
  SearchStats stats;
  const ClusteringResult res = balanced_kcenter(inst, f.search.first, opt, &stats);
  if (f.trace)
    for (const RoundingStep& s : stats.rounding.steps) err << trace_line(s) << '\n';

  const nlohmann::json report = run_report(inst, res, stats, opt.mode, f.search.first);
  if (!f.report.empty()) write_file(f.report, report.dump(2) + "\n");

  if (f.format == "json") {
    nlohmann::json doc = report;
    doc["labels"] = res.labels;
    const std::string text = doc.dump(2) + "\n";
    if (f.output.empty()) out << text;
    else write_file(f.output, text);
    return kOk;
  }
  std::ostringstream labels;
  write_labels_csv(labels, res.labels);
  if (f.output.empty()) {
    out << labels.str();
  } else {
    write_file(f.output, labels.str());
    if (f.report.empty()) out << report.dump(2) << '\n';
  }
  return kOk;
}

// --- generate --------------------------------------------------------------

struct GenerateFlags {
  std::string family;
  double delta = 0.1;
  double l = 1, r = 1, h = 100;
  std::size_t n = 0;
  std::size_t d = 2;
  int k = 3;
  double spread = 10;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_generate(const GenerateFlags& f, std::ostream& out) {
  PointCloud pc;
  try {
    if (f.family == "fig4") pc = fig4_instance(f.delta);
    else if (f.family == "fig5") pc = fig5_instance(f.l, f.r, f.h);
    else pc = gaussian_instance(f.n, f.d, f.k, f.spread, f.seed);
  } catch (const std::invalid_argument& e) {
    throw BoundsError(e.what());
  }
  std::ostringstream os;
  write_coordinates_csv(os, pc);
  if (f.output.empty()) out << os.str();
  else write_file(f.output, os.str());
  return kOk;
}

// --- bench -----------------------------------------------------------------

struct BenchFlags {
  std::string sizes;
  int k = 3;
  std::size_t d = 16;
  double slack = 0.01;
  double spread = 10;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  int repeats = 3;
  bool allow_large_k = false;
  std::string json;
};

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  const auto sizes = parse_sizes(f.sizes);
  const CapPolicy cap{kDefaultMaxK, f.allow_large_k};
  nlohmann::json rows = nlohmann::json::array();
  out << std::left << std::setw(10) << "n" << std::setw(10) << "L"
      << std::setw(10) << "U" << std::setw(12) << "seeding_ms" << std::setw(12)
      << "radii_ms" << std::setw(12) << "search_ms" << std::setw(12)
      << "total_ms" << "ratio\n";
  double prev_total = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::size_t n = sizes[i];
    const Bounds b = slack_bounds(n, f.k, f.slack);
    validate_bounds(n, b, cap);
    PointCloud pc = gaussian_instance(n, f.d, f.k, f.spread, f.seed + i);
    const MetricInstance inst =
        MetricInstance::from_coordinates(std::move(pc.coords), f.d, b, cap);
    SearchStats best;
    double best_total = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < std::max(1, f.repeats); ++rep) {
      SearchStats st;
      const auto t0 = std::chrono::steady_clock::now();
      balanced_kcenter(inst, 0, SearchOptions{CentersMode::kMultisets, f.threads}, &st);
      const double total = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t0).count();
      if (total < best_total) {
        best_total = total;
        best = std::move(st);
      }
    }
    nlohmann::json row{{"n", n},
                       {"lower", b.lower},
                       {"upper", b.upper},
                       {"seeding_ms", best.seeding_ms},
                       {"radii_ms", best.radii_ms},
                       {"search_ms", best.search_ms},
                       {"total_ms", best_total}};
    out << std::setw(10) << n << std::setw(10) << b.lower << std::setw(10)
        << b.upper << std::fixed << std::setprecision(2) << std::setw(12)
        << best.seeding_ms << std::setw(12) << best.radii_ms << std::setw(12)
        << best.search_ms << std::setw(12) << best_total;
    if (i > 0) {
      const double ratio = best_total / prev_total;
      row["ratio"] = ratio;
      out << std::setprecision(3) << ratio;
    } else {
      out << "-";
    }
    out << '\n' << std::defaultfloat;
    prev_total = best_total;
    rows.push_back(row);
  }
  if (!f.json.empty())
    write_file(f.json, nlohmann::json{{"schema", kReportSchema},
                                      {"k", f.k},
                                      {"d", f.d},
                                      {"rows", rows}}
                           .dump(2) + "\n");
  return kOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyFlags {
  InstanceFlags inst;
  SearchFlags search;
};

int cmd_verify(const VerifyFlags& f, std::ostream& out) {
  const MetricInstance inst = load(f.inst);
  if (f.search.first >= inst.size()) throw BoundsError("--first out of range");
  SearchOptions opt{parse_mode(f.search.centers_mode), f.search.threads};
  SearchStats stats;
  const ClusteringResult res = balanced_kcenter(inst, f.search.first, opt, &stats);

  nlohmann::json checks = nlohmann::json::object();
  bool ok = true;
  auto record = [&](const std::string& name, bool pass) {
    checks[name] = pass;
    ok = ok && pass;
  };

  bool sizes_ok = res.labels.size() == inst.size();
  for (std::size_t s : res.sizes)
    sizes_ok = sizes_ok && s >= inst.lower() && s <= inst.upper();
  record("sizes_within_bounds", sizes_ok);

  bool covered = true;
  for (std::size_t p = 0; p < inst.size(); ++p) {
    const int l = res.labels[p];
    covered = covered && l >= 1 && l <= inst.k() &&
              inst.dist2(p, res.centers.centers[l - 1]) <= res.radius2;
  }
  record("points_within_radius", covered);
  record("flow_oracle_agrees",
         oracle::flow_feasible(inst, res.centers, res.radius2, inst.lower(),
                               inst.upper()));

  nlohmann::json summary{{"schema", kReportSchema},
                         {"radius", res.radius},
                         {"centers", res.centers.centers}};
  if (inst.size() <= oracle::kBruteForceMaxPoints && inst.k() <= 3) {
    const auto opt_part = oracle::brute_force_optimum(inst);
    summary["oracle_radius"] = opt_part.radius;
    const double tol = 1e-9;
    record("at_least_optimum", opt_part.radius <= res.radius + tol);
    record("within_four_times_optimum", res.radius <= 4 * opt_part.radius + tol);
    if (opt_part.radius > 0) summary["ratio"] = res.radius / opt_part.radius;
  }
  summary["checks"] = checks;
  summary["pass"] = ok;
  out << summary.dump(2) << '\n';
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

const char* mode_name(CentersMode mode) {
  switch (mode) {
    case CentersMode::kMultisets: return "tuples";
    case CentersMode::kOrderedTuples: return "ordered";
    case CentersMode::kSeedSet: return "seed-set";
  }
  return "?";
}

nlohmann::json run_report(const MetricInstance& instance,
                          const ClusteringResult& result,
                          const SearchStats& stats, CentersMode mode,
                          PointIndex first) {
  return nlohmann::json{
      {"schema", kReportSchema},
      {"instance",
       {{"n", instance.size()},
        {"d", instance.dim()},
        {"metric", instance.kind() == MetricKind::kMatrix ? "matrix" : "coords"},
        {"k", instance.k()},
        {"lower", instance.lower()},
        {"upper", instance.upper()}}},
      {"first", first},
      {"centers_mode", mode_name(mode)},
      {"seeds", stats.seeds.indices},
      {"centers", result.centers.centers},
      {"radius", result.radius},
      {"radius_squared", result.radius2},
      {"sizes", result.sizes},
      {"candidate_radii", stats.candidate_count},
      {"tuples_evaluated", stats.tuples_evaluated},
      {"feasibility_checks", stats.feasibility_checks},
      {"rounding_adjustments", stats.rounding.steps.size()},
      {"timings_ms",
       {{"seeding", stats.seeding_ms},
        {"radii", stats.radii_ms},
        {"search", stats.search_ms}}}};
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Balanced k-center clustering"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* s = app.add_subcommand("solve", "cluster an instance");
  add_instance_flags(s, solve.inst);
  add_search_flags(s, solve.search);
  s->add_option("--output", solve.output, "labels CSV (or JSON document) path");
  s->add_option("--report", solve.report, "JSON run report path");
  s->add_option("--format", solve.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  s->add_flag("--trace-rounding", solve.trace, "print rounding adjustments to stderr");

  GenerateFlags gen;
  auto* g = app.add_subcommand("generate", "write a synthetic instance");
  g->set_help_flag("--help", "print this help message and exit");
  g->add_option("--family", gen.family, "fig4 | fig5 | gaussian")
      ->required()
      ->check(CLI::IsMember({"fig4", "fig5", "gaussian"}));
  g->add_option("--delta", gen.delta, "fig4 gap reduction");
  g->add_option("--l", gen.l, "fig5 vertical offset of p3, p4");
  g->add_option("--r", gen.r, "fig5 half-distance of p5, p6");
  g->add_option("--h", gen.h, "fig5 horizontal distance");
  g->add_option("--n", gen.n, "gaussian point count");
  g->add_option("--d", gen.d, "gaussian dimension");
  g->add_option("--k", gen.k, "gaussian mean count");
  g->add_option("--spread", gen.spread, "gaussian mean range");
  g->add_option("--seed", gen.seed, "random seed");
  g->add_option("--output", gen.output, "output path (default stdout)");

  BenchFlags bench;
  auto* b = app.add_subcommand("bench", "time the pipeline on growing inputs");
  b->add_option("--sizes", bench.sizes, "comma-separated n values")->required();
  b->add_option("--k", bench.k, "clusters");
  b->add_option("--d", bench.d, "dimension");
  b->add_option("--slack", bench.slack, "relative bound slack");
  b->add_option("--spread", bench.spread, "gaussian mean range");
  b->add_option("--seed", bench.seed, "random seed");
  b->add_option("--threads", bench.threads, "worker threads");
  b->add_option("--repeats", bench.repeats, "runs per size (fastest kept)");
  b->add_flag("--allow-large-k", bench.allow_large_k, "lift the k cap");
  b->add_option("--json", bench.json, "also write results as JSON");

  VerifyFlags ver;
  auto* v = app.add_subcommand("verify", "solve and check against the oracles");
  add_instance_flags(v, ver.inst);
  add_search_flags(v, ver.search);

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(std::move(rest));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (s->parsed()) return cmd_solve(solve, out, err);
    if (g->parsed()) return cmd_generate(gen, out);
    if (b->parsed()) return cmd_bench(bench, out);
    if (v->parsed()) return cmd_verify(ver, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const BoundsError& e) {
    err << "error: " << e.what() << '\n';
    return kBounds;
  } catch (const CapError& e) {
    err << "error: " << e.what() << '\n';
    return kCap;
  }
  return kParse;
}

}  // namespace bkc::cli
