#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "bkc/metric.hpp"
#include "bkc/search.hpp"

namespace bkc::cli {

enum ExitCode : int {
  kOk = 0,
  kParse = 1,   // unreadable input, bad flags
  kBounds = 2,  // invalid k/L/U or generator parameters
  kCap = 3,     // k above the cap without --allow-large-k
  kVerifyFailed = 4,
};

inline constexpr int kReportSchema = 1;

const char* mode_name(CentersMode mode);

// JSON run report; radius and sizes are copied from `result` verbatim.
nlohmann::json run_report(const MetricInstance& instance,
                          const ClusteringResult& result,
                          const SearchStats& stats, CentersMode mode,
                          PointIndex first);

// Entry point behind the `bkc` binary. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace bkc::cli
