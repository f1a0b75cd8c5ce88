#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "theonlab/report.hpp"

namespace theonlab {

struct ExperimentSpec {
    std::string name;
    nlohmann::json params;        // experiment-specific flags
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;    // 0 = experiment default
    int threads = 1;
    double alpha = 1e-3;
};

std::vector<std::string> experiment_names();

// Runs a registered separation experiment; the report's decision is "pass"
// when every expected behavior (including exact-oracle agreement) holds and
// "fail" otherwise, with MC values, oracle values and z-scores attached.
Report run_experiment(const ExperimentSpec& spec);

} // namespace theonlab
