#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "theonlab/catalog.hpp"
#include "theonlab/experiments.hpp"
#include "theonlab/testlab.hpp"

using namespace theonlab;

namespace {

std::uint64_t resolve_seed(const std::string& seed_flag) {
    if (!seed_flag.empty()) return std::stoull(seed_flag);
    if (const char* env = std::getenv("THEONLAB_SEED")) return std::stoull(env);
    return 0;
}

std::uint64_t parse_samples(const std::string& s, std::uint64_t dflt) {
    if (s.empty()) return dflt;
    return (std::uint64_t)std::llround(std::stod(s)); // accepts "2e7"
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Theon build_theon(const std::vector<std::string>& specs, const std::string& coupling) {
    if (specs.empty()) throw std::invalid_argument("--theon is required");
    std::vector<Theon> parts;
    for (const auto& s : specs) parts.push_back(make_theon(s));
    if (coupling.empty()) {
        if (parts.size() != 1) throw std::invalid_argument("multiple --theon flags need --coupling independent");
        return parts[0];
    }
    if (coupling == "diagonal") {
        if (parts.size() != 1) throw std::invalid_argument("--coupling diagonal takes exactly one --theon");
        return diagonal_self_coupling(parts[0]);
    }
    if (coupling == "independent") {
        if (parts.size() == 1) return independent_self_coupling(parts[0]);
        std::vector<std::string> suffixes;
        bool clash = false;
        std::set<std::string> names;
        for (const auto& t : parts)
            for (const auto& p : t.theory.sig.preds)
                if (!names.insert(p.name).second) clash = true;
        if (clash)
            for (size_t i = 0; i < parts.size(); ++i) suffixes.push_back("_" + std::to_string(i + 1));
        return independent_coupling(parts, suffixes);
    }
    throw std::invalid_argument("unknown coupling '" + coupling + "' (independent|diagonal)");
}

std::vector<std::vector<Vertex>> parse_sets(const std::string& s) {
    std::vector<std::vector<Vertex>> sets;
    std::stringstream groups(s);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<Vertex> verts;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) verts.push_back(std::stoi(item));
        if (!verts.empty()) sets.push_back(verts);
    }
    return sets;
}

int emit(const Report& rep) {
    std::cout << rep.to_json().dump(2) << "\n";
    return rep.exit_code();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"theonlab: theons as executable membership oracles, with quasirandomness falsifiers"};
    app.require_subcommand(1);

    // list
    auto* list_cmd = app.add_subcommand("list", "catalog of theories, theons, interpretations, experiments");
    bool list_json = false;
    list_cmd->add_flag("--json", list_json, "machine-readable catalog");

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "realize one model from a theon");
    std::vector<std::string> s_theons;
    std::string s_coupling, s_seed;
    int s_n = 4;
    bool s_json = false;
    sample_cmd->add_option("--theon", s_theons, "theon spec (repeatable with --coupling)")->required();
    sample_cmd->add_option("--coupling", s_coupling, "independent|diagonal");
    sample_cmd->add_option("--n", s_n, "vertex count");
    sample_cmd->add_option("--seed", s_seed, "master seed (default env THEONLAB_SEED, then 0)");
    sample_cmd->add_flag("--json", s_json, "wrap the model in a JSON report");

    // density
    auto* density_cmd = app.add_subcommand("density", "labeled and unlabeled density of a model under a theon");
    std::vector<std::string> d_theons;
    std::string d_coupling, d_model, d_samples, d_seed;
    int d_threads = 1;
    density_cmd->add_option("--theon", d_theons)->required();
    density_cmd->add_option("--coupling", d_coupling, "independent|diagonal");
    density_cmd->add_option("--model", d_model, "model file")->required();
    density_cmd->add_option("--samples", d_samples, "sample count (default 1e6; accepts 2e7)");
    density_cmd->add_option("--seed", d_seed);
    density_cmd->add_option("--threads", d_threads);

    // test
    auto* test_cmd = app.add_subcommand("test", "run a property falsifier");
    std::string t_property, t_coupling, t_samples, t_seed, t_sets, t_mode = "labeled";
    std::vector<std::string> t_theons;
    int t_level = 1, t_m = 3, t_bins = 4, t_threads = 1, t_probes = 8;
    double t_alpha = 1e-3;
    std::string t_trials;
    test_cmd->add_option("--property", t_property, "independence|rank|weak-independence|locality|clique-disc|disc|coupleability")
        ->required();
    test_cmd->add_option("--theon", t_theons)->required();
    test_cmd->add_option("--coupling", t_coupling, "independent|diagonal");
    test_cmd->add_option("--level", t_level, "ell (or r for rank)");
    test_cmd->add_option("--m", t_m, "realized model size (weak independence)");
    test_cmd->add_option("--bins", t_bins);
    test_cmd->add_option("--probes", t_probes, "flattening probes (clique-disc)");
    test_cmd->add_option("--sets", t_sets, "vertex sets, e.g. \"1,2;2,3\" (locality)");
    test_cmd->add_option("--mode", t_mode, "labeled|symmetric (locality)");
    test_cmd->add_option("--samples", t_samples);
    test_cmd->add_option("--trials", t_trials, "probe trials (independence/rank)");
    test_cmd->add_option("--alpha", t_alpha);
    test_cmd->add_option("--seed", t_seed);
    test_cmd->add_option("--threads", t_threads);

    // run
    auto* run_cmd = app.add_subcommand("run", "run a registered separation experiment");
    std::string r_name, r_samples, r_seed, r_p = "", r_theon;
    int r_ell = 1, r_k = 2, r_threads = 1;
    double r_alpha = 1e-3;
    run_cmd->add_option("experiment", r_name, "experiment name")->required();
    run_cmd->add_option("--ell", r_ell);
    run_cmd->add_option("--k", r_k);
    run_cmd->add_option("--p", r_p);
    run_cmd->add_option("--theon", r_theon);
    run_cmd->add_option("--samples", r_samples);
    run_cmd->add_option("--seed", r_seed);
    run_cmd->add_option("--threads", r_threads);
    run_cmd->add_option("--alpha", r_alpha);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*list_cmd) {
            if (list_json)
                std::cout << catalog_json().dump(2) << "\n";
            else
                std::cout << catalog_text();
            return 0;
        }

        if (*sample_cmd) {
            const std::uint64_t seed = resolve_seed(s_seed);
            Theon t = build_theon(s_theons, s_coupling);
            Point theta = sample_theta(s_n, GroundSpace{t.dims}, t.max_arity(), seed);
            Model m = realize_model(t, theta);
            if (s_json) {
                Report rep;
                rep.command = "sample";
                rep.params = {{"theon", t.name}, {"n", s_n}};
                rep.seed = seed;
                rep.evidence = {{"model", serialize_model(m)}};
                rep.decision = "estimate";
                return emit(rep);
            }
            std::cout << serialize_model(m);
            return 0;
        }

        if (*density_cmd) {
            const std::uint64_t seed = resolve_seed(d_seed);
            const std::uint64_t n = parse_samples(d_samples, 1000000);
            Theon t = build_theon(d_theons, d_coupling);
            Model m = parse_model(read_file(d_model), t.theory.sig);
            auto [labeled, unlabeled] = estimate_density(t, m, n, seed, d_threads);
            Report rep;
            rep.command = "density";
            rep.params = {{"theon", t.name}, {"model", d_model}, {"samples", n}, {"threads", d_threads}};
            rep.seed = seed;
            rep.n_samples = n;
            rep.add_estimate("labeled", labeled);
            rep.add_estimate("unlabeled", unlabeled);
            rep.decision = "estimate";
            return emit(rep);
        }

        if (*test_cmd) {
            const std::uint64_t seed = resolve_seed(t_seed);
            Theon t = build_theon(t_theons, t_coupling);
            Report rep;
            if (t_property == "independence") {
                rep = independence_probe(t, t_level, parse_samples(t_trials, 10000), seed);
            } else if (t_property == "rank") {
                rep = rank_probe(t, t_level, parse_samples(t_trials, 10000), seed);
            } else if (t_property == "weak-independence") {
                WeakIndepConfig cfg;
                cfg.ell = t_level;
                cfg.m = t_m;
                cfg.n_samples = parse_samples(t_samples, 40000);
                cfg.bins = t_bins;
                cfg.alpha = t_alpha;
                cfg.threads = t_threads;
                rep = weak_independence_test(t, cfg, seed);
            } else if (t_property == "locality") {
                LocalityConfig cfg;
                cfg.sets = t_sets.empty() ? std::vector<std::vector<Vertex>>{{1, 2}, {2, 3}} : parse_sets(t_sets);
                cfg.symmetric = t_mode == "symmetric";
                cfg.n_samples = parse_samples(t_samples, 100000);
                cfg.alpha = t_alpha;
                cfg.threads = t_threads;
                rep = locality_test(t, cfg, seed);
            } else if (t_property == "clique-disc") {
                CliqueDiscConfig cfg;
                cfg.ell = t_level;
                cfg.probes = t_probes;
                cfg.inner_samples = parse_samples(t_samples, 20000);
                cfg.alpha = t_alpha;
                cfg.threads = t_threads;
                rep = clique_disc_test(t, cfg, seed);
            } else if (t_property == "disc") {
                DiscConfig cfg;
                cfg.edge_pred = 0;
                for (size_t p = 1; p < t.theory.sig.preds.size(); ++p) {
                    Tuple iota(t.theory.sig.preds[p].arity);
                    std::iota(iota.begin(), iota.end(), 1);
                    cfg.events.emplace_back((int)p, iota);
                }
                cfg.n_samples = parse_samples(t_samples, 200000);
                cfg.threads = t_threads;
                rep = disc_test(t, cfg, seed);
            } else if (t_property == "coupleability") {
                CoupleabilityConfig cfg;
                cfg.n_samples = parse_samples(t_samples, 100000);
                cfg.max_model_size = std::min(3, std::max(2, t.max_arity()));
                cfg.threads = t_threads;
                rep = coupleability_falsifier(t, cfg, seed);
            } else {
                throw std::invalid_argument("unknown property '" + t_property + "'");
            }
            return emit(rep);
        }

        if (*run_cmd) {
            ExperimentSpec spec;
            spec.name = r_name;
            spec.params = nlohmann::json::object();
            if (run_cmd->count("--ell")) spec.params["ell"] = r_ell;
            if (run_cmd->count("--k")) spec.params["k"] = r_k;
            if (!r_p.empty()) spec.params["p"] = r_p;
            if (!r_theon.empty()) spec.params["theon"] = r_theon;
            spec.seed = resolve_seed(r_seed);
            spec.samples = parse_samples(r_samples, 0);
            spec.threads = r_threads;
            spec.alpha = r_alpha;
            return emit(run_experiment(spec));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
