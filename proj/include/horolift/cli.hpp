#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace horolift::cli {

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
};

/// Worker cap: min(hardware, HOROLIFT_THREADS if set), at least 1.
int worker_count();

/// Runs the command named in the config. Returns the process exit code:
/// 0 = all gates pass, 1 = a mathematical gate failed, 2 = input/config error.
/// The JSON report (schema 1) is written atomically to <out_dir>/report.json
/// and, when `report` is non-null, copied there.
int run(const Options& options, nlohmann::json* report = nullptr);

/// Same, with the config document already parsed.
int run_config(const nlohmann::json& config, const Options& options,
               nlohmann::json* report = nullptr);

} // namespace horolift::cli
