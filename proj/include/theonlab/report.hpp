#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "theonlab/estimation.hpp"

namespace theonlab {

inline constexpr int kReportSchema = 1;

// Uniform report for every command, probe and experiment. Serializes to the
// stable schema-1 JSON layout; `params` embeds the full config so any report
// can be replayed bit-exactly.
struct Report {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::uint64_t n_samples = 0;
    std::vector<std::pair<std::string, DensityEstimate>> estimates;
    std::vector<std::pair<std::string, nlohmann::json>> oracle;
    std::optional<double> statistic;
    std::optional<double> p_value;
    std::string decision = "estimate"; // pass | reject | inconclusive | estimate
    nlohmann::json evidence;           // set when rejecting
    std::string note;

    void add_estimate(const std::string& name, const DensityEstimate& e) { estimates.emplace_back(name, e); }
    void add_oracle(const std::string& name, nlohmann::json value) { oracle.emplace_back(name, std::move(value)); }
    const DensityEstimate* find_estimate(const std::string& name) const;

    nlohmann::json to_json() const;
    int exit_code() const { return decision == "reject" || decision == "fail" ? 1 : 0; }
};

} // namespace theonlab
