#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace wflow::cli {

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;  // dotted.path=value, applied in order
    std::string output_path;             // wins over config output.path
    std::string format;                  // wins over config output.format
    double tol = 0.0;                    // 0: command default
    int jobs = 1;
    std::uint64_t seed = 20240801;
};

// Reads the config file, applies --set overrides and the direct output
// overrides.  Throws IoError / ConfigError.
nlohmann::json load_config(const CommonOptions& opts);

int cmd_simulate(const CommonOptions& opts);
int cmd_collapse(const CommonOptions& opts);
int cmd_verify(const CommonOptions& opts, const std::vector<std::string>& suites);
int cmd_sweep(const CommonOptions& opts);
int cmd_avoidance(const CommonOptions& opts);
int cmd_families();

// Maps exceptions onto the exit-code contract:
// 0 ok, 1 check failure, 2 config error, 3 numerical failure, 4 I/O error.
int run_guarded(const std::function<int()>& fn);

}  // namespace wflow::cli
