#include <doctest.h>

#include <set>

#include "theonlab/catalog.hpp"
#include "theonlab/experiments.hpp"
#include "theonlab/testlab.hpp"

using namespace theonlab;

TEST_CASE("report JSON carries the schema-1 fields") {
    Report rep = independence_probe(skew_graphon(0.3), 1, 2000, 7);
    auto j = rep.to_json();
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "test");
    CHECK(j.contains("params"));
    CHECK(j["seed"] == 7);
    CHECK(j["n_samples"] == 2000);
    CHECK(j["estimates"].is_array());
    CHECK(j["oracle"].is_array());
    CHECK(j["decision"] == "reject");
    CHECK(j.contains("evidence"));
    CHECK(rep.exit_code() == 1);
}

TEST_CASE("experiment replay determinism") {
    ExperimentSpec spec;
    spec.name = "alternating-census";
    spec.params = {{"k", 2}};
    spec.seed = 3;
    Report a = run_experiment(spec);
    Report b = run_experiment(spec);
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK(a.decision == "pass");
    CHECK(a.exit_code() == 0);

    ExperimentSpec mc;
    mc.name = "sep-independence-disc";
    mc.params = {{"k", 2}, {"ell", 1}, {"p", "1/2"}};
    mc.seed = 5;
    mc.samples = 50000;
    mc.threads = 2;
    Report c = run_experiment(mc);
    mc.threads = 1; // thread count must not affect any numeric field
    Report d = run_experiment(mc);
    auto strip = [](Report& r) {
        auto j = r.to_json();
        j["params"].erase("threads");
        return j.dump();
    };
    CHECK(strip(c) == strip(d));
}

TEST_CASE("unknown experiment or theon raises usage errors") {
    ExperimentSpec spec;
    spec.name = "no-such-experiment";
    CHECK_THROWS_WITH_AS(run_experiment(spec), doctest::Contains("unknown experiment"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_theon("no-such-theon:p=1"), doctest::Contains("unknown theon"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_theon("qr-hypergraphon:k=2"), doctest::Contains("missing parameter"),
                         std::invalid_argument);
}

TEST_CASE("catalog lists every registered name") {
    auto j = catalog_json();
    std::set<std::string> theons;
    for (const auto& item : j["theons"]) theons.insert(item["name"].get<std::string>());
    for (const char* name : {"qr-tournamon", "skew-graphon", "dev-not-uinduce", "linear-order"})
        CHECK(theons.count(name) == 1);
    std::set<std::string> experiments;
    for (const auto& item : j["experiments"]) experiments.insert(item["name"].get<std::string>());
    for (const auto& name : experiment_names()) CHECK(experiments.count(name) == 1);
}

TEST_CASE("every registered interpretation spec resolves") {
    for (const char* spec : {"alternation:ell=1", "arc-orientation:ell=1", "complement:k=2", "identity:theory=graph"})
        CHECK_NOTHROW(make_interpretation(spec));
}
