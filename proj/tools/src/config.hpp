#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wflow/avoidance.hpp"
#include "wflow/flow.hpp"

namespace wflow::cli {

// Configuration rejection carrying the dotted field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct OutputSpec {
    std::string path;            // empty: stdout
    std::string format = "csv";  // csv | json
    int samples = 200;
};

struct RunConfig {
    IsoparametricFamily family;
    WeingartenSpec spec;
    double tau0;
    double t_max;
    SolverConfig solver;
    OutputSpec output;
    nlohmann::json echo;  // the document the run was built from
};

RunConfig parse_run_config(const nlohmann::json& doc);

struct AvoidanceConfig {
    avoid::PairScenario scenario;
    SolverConfig solver;
    int grid = 400;
    double tol = 1e-9;
    OutputSpec output;
    nlohmann::json echo;
};

AvoidanceConfig parse_avoidance_config(const nlohmann::json& doc);

// Applies "dotted.path=value" into the document; the value is parsed as JSON
// when possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

// Sweep axes: dotted config path -> list of values, taken from doc["sweep"].
std::vector<std::pair<std::string, nlohmann::json>> sweep_axes(const nlohmann::json& doc);

}  // namespace wflow::cli
