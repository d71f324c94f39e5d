#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wflow/flow.hpp"

namespace wflow::cli {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// %.17g: enough digits for a lossless double round trip.
std::string format_double(double x);

// JSON serialization with every floating-point number at 17 significant
// digits.  Non-finite numbers become null.
std::string dump_json(const nlohmann::json& j, int indent = 2);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Trajectory resampled on a uniform time grid.  Columns: t, tau, phi, speed,
// then one column per curvature block labeled k{i}_m{multiplicity}.  A
// trailing comment line carries the terminal record.
std::string trajectory_csv(const FlowTrajectory& trajectory,
                           const IsoparametricFamily& family,
                           const WeingartenSpec& spec, int samples);

nlohmann::json trajectory_json_samples(const FlowTrajectory& trajectory,
                                       const IsoparametricFamily& family,
                                       const WeingartenSpec& spec, int samples);

nlohmann::json terminal_json(const CollapseResult& terminal);

}  // namespace wflow::cli
