#include "theonlab/report.hpp"

namespace theonlab {

const DensityEstimate* Report::find_estimate(const std::string& name) const {
    for (const auto& [n, e] : estimates)
        if (n == name) return &e;
    return nullptr;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["params"] = params;
    j["seed"] = seed;
    j["n_samples"] = n_samples;
    auto ests = nlohmann::json::array();
    for (const auto& [name, e] : estimates)
        ests.push_back({{"name", name}, {"value", e.value}, {"stderr", e.stderr_}, {"n_samples", e.n_samples}});
    j["estimates"] = ests;
    auto orc = nlohmann::json::array();
    for (const auto& [name, v] : oracle) orc.push_back({{"name", name}, {"value", v}});
    j["oracle"] = orc;
    if (statistic) j["statistic"] = *statistic;
    if (p_value) j["p_value"] = *p_value;
    j["decision"] = decision;
    if (!evidence.is_null()) j["evidence"] = evidence;
    if (!note.empty()) j["note"] = note;
    return j;
}

} // namespace theonlab
