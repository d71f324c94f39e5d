#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wflow/flow.hpp"

namespace wflow::verify {

struct CaseResult {
    std::string name;
    bool passed = false;
    double expected = 0.0;
    double actual = 0.0;
    double difference = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CaseResult> cases;
    bool all_passed() const;
};

struct Report {
    std::vector<SuiteResult> suites;
    double wall_time_s = 0.0;
    bool all_passed() const;
    int total_cases() const;
    int total_failures() const;
};

// Suite names: "axioms", "oracle", "agreement", "qualitative", "avoidance".
std::vector<std::string> suite_names();

// Runs the named suites (all of them when `suites` is empty).  Tolerances are
// fixed in the implementation.
Report run(const std::vector<std::string>& suites, std::uint64_t seed);

// The closed-form verification grid shared by the oracle and agreement
// suites.
std::vector<FlowProblem> oracle_grid();

}  // namespace wflow::verify
