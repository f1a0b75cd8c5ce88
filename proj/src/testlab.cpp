#include "theonlab/testlab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "theonlab/mc.hpp"
#include "theonlab/stats.hpp"

namespace theonlab {

namespace {

nlohmann::json theon_param(const Theon& t) { return t.name; }

Report flip_probe(const char* name, const Theon& t, int level, bool resample_low_coords, std::uint64_t trials,
                  std::uint64_t seed) {
    Report rep;
    rep.command = "test";
    rep.params = {{"property", name}, {"theon", theon_param(t)}, {"level", level}, {"trials", trials}};
    rep.seed = seed;
    rep.n_samples = trials;

    const int maxar = t.max_arity();
    Point pt(maxar, maxar, t.dims);
    Rng rng(split_seed(seed, 0));
    std::uint64_t flips = 0;
    std::int64_t first_flip = -1;
    std::string first_pred;
    std::vector<bool> before(t.peons.size());
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        sample_point_into(pt, rng);
        for (size_t p = 0; p < t.peons.size(); ++p) before[p] = eval_membership_id(t, (int)p, pt);
        if (resample_low_coords)
            resample_low(pt, level, rng);
        else
            resample_high(pt, level, rng);
        for (size_t p = 0; p < t.peons.size(); ++p) {
            if (eval_membership_id(t, (int)p, pt) != before[p]) {
                ++flips;
                if (first_flip < 0) {
                    first_flip = (std::int64_t)trial;
                    first_pred = t.theory.sig.preds[p].name;
                }
                break; // one flip per trial counts once
            }
        }
    }
    rep.add_estimate("flip_frequency", bernoulli_estimate(flips, trials, seed));
    rep.statistic = (double)flips;
    rep.decision = flips == 0 ? "pass" : "reject";
    if (flips > 0)
        rep.evidence = {{"first_flip_trial", first_flip}, {"predicate", first_pred}, {"flips", flips}};
    rep.note = "representation probe: tests the given representation, not the homomorphism; pass = no flip under the documented probe family";
    return rep;
}

} // namespace

Report independence_probe(const Theon& t, int ell, std::uint64_t trials, std::uint64_t seed) {
    return flip_probe("independence", t, ell, /*resample_low=*/true, trials, seed);
}

Report rank_probe(const Theon& t, int r, std::uint64_t trials, std::uint64_t seed) {
    return flip_probe("rank", t, r, /*resample_low=*/false, trials, seed);
}

namespace {

struct CellIndexer {
    std::unordered_map<Bits, int, BitsHash> ids;
    int of(const Bits& b) {
        auto [it, fresh] = ids.emplace(b, (int)ids.size());
        return it->second;
    }
};

} // namespace

Report weak_independence_test(const Theon& t, const WeakIndepConfig& cfg, std::uint64_t seed) {
    Report rep;
    rep.command = "test";
    rep.params = {{"property", "weak-independence"}, {"theon", theon_param(t)},     {"level", cfg.ell},
                  {"m", cfg.m},                      {"n_samples", cfg.n_samples},  {"bins", cfg.bins},
                  {"n_proj", cfg.n_proj},            {"alpha", cfg.alpha},          {"threads", cfg.threads}};
    rep.seed = seed;
    rep.n_samples = cfg.n_samples;
    if (cfg.m < t.max_arity()) throw std::invalid_argument("weak_independence_test: m must be >= max arity");

    Realizer realizer(t, cfg.m);
    // low coordinate variables: one per (subset of size <= ell, factor)
    SubsetTable table(cfg.m, t.max_arity());
    std::vector<std::pair<std::uint32_t, int>> lows;
    for (auto mask : table.masks)
        if (std::popcount(mask) <= cfg.ell)
            for (int f = 0; f < t.dims; ++f) lows.emplace_back(mask, f);
    // random joint 2-projections, drawn from a dedicated seed stream
    std::vector<std::pair<int, int>> projections;
    if (lows.size() >= 2) {
        Rng proj_rng(split_seed(seed, 0xbeef));
        for (int j = 0; j < cfg.n_proj; ++j) {
            int a = (int)(proj_rng.u64() % lows.size());
            int b = (int)(proj_rng.u64() % (lows.size() - 1));
            if (b >= a) ++b;
            projections.emplace_back(std::min(a, b), std::max(a, b));
        }
    }
    const size_t n_vars = lows.size() + projections.size();
    const size_t single_cols = (size_t)cfg.bins;
    const size_t pair_cols = single_cols * single_cols;

    struct State {
        Point pt;
        Bits scratch;
        CellIndexer cells;
        // per cell: concatenated per-variable column counts
        std::vector<std::vector<std::uint64_t>> counts;
    };
    const size_t row_len = lows.size() * single_cols + projections.size() * pair_cols;
    auto make = [&] { return State{Point(cfg.m, t.max_arity(), t.dims), Bits(), CellIndexer{}, {}}; };
    auto per_sample = [&](State& st, Rng& rng) {
        sample_point_into(st.pt, rng);
        realizer.realize(st.pt, st.scratch);
        const int cell = st.cells.of(st.scratch);
        if ((size_t)cell >= st.counts.size()) st.counts.resize(cell + 1, std::vector<std::uint64_t>(row_len, 0));
        auto& row = st.counts[cell];
        std::vector<int> bin(lows.size());
        for (size_t v = 0; v < lows.size(); ++v) {
            bin[v] = std::min(cfg.bins - 1, (int)(st.pt.coord(lows[v].first, lows[v].second) * cfg.bins));
            ++row[v * single_cols + bin[v]];
        }
        for (size_t pjt = 0; pjt < projections.size(); ++pjt) {
            const auto [a, b] = projections[pjt];
            ++row[lows.size() * single_cols + pjt * pair_cols + (size_t)bin[a] * single_cols + bin[b]];
        }
    };
    auto merge = [&](State& acc, State& part) {
        for (const auto& [bits, id] : part.cells.ids) {
            const int cell = acc.cells.of(bits);
            if ((size_t)cell >= acc.counts.size()) acc.counts.resize(cell + 1, std::vector<std::uint64_t>(row_len, 0));
            for (size_t j = 0; j < row_len; ++j) acc.counts[cell][j] += part.counts[id][j];
        }
    };
    State st = mc_run<State>(cfg.n_samples, seed, cfg.threads, make, per_sample, merge);

    double min_p = 1.0;
    int worst_var = -1;
    Chi2Result worst;
    for (size_t v = 0; v < n_vars; ++v) {
        const bool pair = v >= lows.size();
        const size_t cols = pair ? pair_cols : single_cols;
        const size_t off = pair ? lows.size() * single_cols + (v - lows.size()) * pair_cols : v * single_cols;
        std::vector<std::vector<std::uint64_t>> tab;
        tab.reserve(st.counts.size());
        for (const auto& row : st.counts) tab.emplace_back(row.begin() + off, row.begin() + off + cols);
        Chi2Result r = contingency_chi2(std::move(tab));
        if (!r.degenerate && r.p_value < min_p) {
            min_p = r.p_value;
            worst_var = (int)v;
            worst = r;
        }
    }
    const double adjusted = std::min(1.0, min_p * (double)n_vars); // Bonferroni
    rep.statistic = worst_var >= 0 ? worst.statistic : 0.0;
    rep.p_value = adjusted;
    rep.decision = adjusted < cfg.alpha ? "reject" : "pass";
    if (rep.decision == "reject") {
        std::string var_name;
        if (worst_var < (int)lows.size()) {
            std::ostringstream os;
            os << "theta_{";
            for (int i = 0; i < cfg.m; ++i)
                if (lows[worst_var].first >> i & 1) os << (i + 1) << ",";
            os << "}f" << lows[worst_var].second;
            var_name = os.str();
        } else {
            var_name = "joint_projection_" + std::to_string(worst_var - (int)lows.size());
        }
        rep.evidence = {{"variable", var_name}, {"chi2", worst.statistic}, {"dof", worst.dof}, {"raw_p", min_p}};
    }
    rep.note = "falsifier: reject is sound up to alpha; pass is evidence only";
    return rep;
}

Report locality_test(const Theon& t, const LocalityConfig& cfg, std::uint64_t seed) {
    Report rep;
    rep.command = "test";
    auto sets_json = nlohmann::json::array();
    for (const auto& s : cfg.sets) sets_json.push_back(s);
    // pairwise intersection sizes are part of the report contract
    auto inter_json = nlohmann::json::array();
    for (size_t i = 0; i < cfg.sets.size(); ++i)
        for (size_t j = i + 1; j < cfg.sets.size(); ++j) {
            std::vector<Vertex> a = cfg.sets[i], b = cfg.sets[j], both;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
            inter_json.push_back(both.size());
        }
    rep.params = {{"property", "locality"},         {"theon", theon_param(t)}, {"sets", sets_json},
                  {"intersection_sizes", inter_json}, {"mode", cfg.symmetric ? "symmetric" : "labeled"},
                  {"n_samples", cfg.n_samples},     {"alpha", cfg.alpha},      {"threads", cfg.threads}};
    rep.seed = seed;
    rep.n_samples = cfg.n_samples;
    if (cfg.sets.size() < 2) throw std::invalid_argument("locality_test: need at least two vertex sets");

    int n = 0;
    for (const auto& s : cfg.sets)
        for (Vertex v : s) n = std::max(n, v);

    // marginal outcome = labeled submodel of the realization on each set
    // (its iso class in symmetric mode), mapped to small ids on the fly
    struct SetCtx {
        std::vector<Vertex> verts; // sorted
    };
    std::vector<SetCtx> sets;
    for (auto s : cfg.sets) {
        std::sort(s.begin(), s.end());
        sets.push_back({s});
    }

    struct State {
        Point pt;
        std::map<std::vector<std::string>, std::uint64_t> joint; // keyed by per-set outcome bytes
    };
    auto outcome_bytes = [&](const Model& sub, bool symmetric) {
        return relation_bytes(symmetric ? canonical_form(sub) : sub);
    };
    auto make = [&] { return State{Point(n, t.max_arity(), t.dims), {}}; };
    auto per_sample = [&](State& st, Rng& rng) {
        sample_point_into(st.pt, rng);
        Model whole = realize_model(t, st.pt);
        std::vector<std::string> key;
        key.reserve(sets.size());
        for (const auto& s : sets) key.push_back(outcome_bytes(induced_submodel(whole, s.verts), cfg.symmetric));
        ++st.joint[key];
    };
    auto merge = [](State& acc, State& part) {
        for (auto& [k, v] : part.joint) acc.joint[k] += v;
    };
    State st = mc_run<State>(cfg.n_samples, seed, cfg.threads, make, per_sample, merge);

    // dense index per variable
    std::vector<std::map<std::string, int>> levels(sets.size());
    for (const auto& [key, cnt] : st.joint)
        for (size_t v = 0; v < sets.size(); ++v) levels[v].emplace(key[v], 0);
    std::vector<int> dims;
    for (auto& lv : levels) {
        int next = 0;
        for (auto& [name, id] : lv) id = next++;
        dims.push_back(next);
    }
    size_t cells = 1;
    for (int d : dims) cells *= (size_t)d;
    std::vector<std::uint64_t> counts(cells, 0);
    for (const auto& [key, cnt] : st.joint) {
        size_t idx = 0;
        for (size_t v = 0; v < sets.size(); ++v) idx = idx * dims[v] + levels[v].at(key[v]);
        counts[idx] = cnt;
    }
    Chi2Result r = product_margin_chi2(counts, dims);
    rep.statistic = r.statistic;
    rep.p_value = r.degenerate ? 1.0 : r.p_value;
    rep.decision = (!r.degenerate && r.p_value < cfg.alpha) ? "reject" : "pass";
    if (r.degenerate) rep.note = "marginals are (nearly) constant; independence holds trivially under this probe";

    // joint and marginal frequencies for the most frequent joint cells
    std::vector<std::pair<std::uint64_t, std::vector<std::string>>> top;
    for (const auto& [key, cnt] : st.joint) top.emplace_back(cnt, key);
    std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    if (top.size() > 8) top.resize(8);
    for (const auto& [cnt, key] : top) {
        std::string name = "joint";
        for (const auto& part : key) {
            std::string flat = part;
            std::replace(flat.begin(), flat.end(), '\n', ' ');
            name += "|" + flat;
        }
        rep.add_estimate(name, bernoulli_estimate(cnt, cfg.n_samples, seed));
    }
    if (rep.decision == "reject")
        rep.evidence = {{"chi2", r.statistic}, {"dof", r.dof}, {"rows", r.rows}, {"cols", r.cols}};
    return rep;
}

namespace {

std::vector<Model> default_linear_hosts(int k, int ell) {
    // hosts whose edges pairwise intersect in <= ell vertices
    std::vector<Model> hosts;
    const Signature sig{{{"E", k}}};
    auto add_host = [&](int n, const std::vector<std::vector<Vertex>>& edges) {
        Model m = Model::empty(sig, n);
        for (const auto& e : edges) {
            // symmetric closure of one orientation
            Tuple t(e.begin(), e.end());
            std::sort(t.begin(), t.end());
            do {
                m.rels[0].push_back(t);
            } while (std::next_permutation(t.begin(), t.end()));
        }
        m.normalize();
        hosts.push_back(std::move(m));
    };
    // single edge
    {
        std::vector<Vertex> e(k);
        std::iota(e.begin(), e.end(), 1);
        add_host(k, {e});
    }
    // two edges sharing exactly ell vertices
    {
        std::vector<Vertex> e1(k), e2(k);
        std::iota(e1.begin(), e1.end(), 1);
        for (int i = 0; i < ell; ++i) e2[i] = i + 1;
        for (int i = ell; i < k; ++i) e2[i] = k + (i - ell) + 1;
        add_host(2 * k - ell, {e1, e2});
    }
    // three edges in a chain, consecutive overlaps of size ell
    {
        std::vector<std::vector<Vertex>> edges;
        int next = 1;
        std::vector<Vertex> prev;
        for (int e = 0; e < 3; ++e) {
            std::vector<Vertex> cur;
            if (e > 0)
                for (int i = k - ell; i < k; ++i) cur.push_back(prev[i]);
            while ((int)cur.size() < k) cur.push_back(next++);
            edges.push_back(cur);
            prev = cur;
        }
        // chain construction reuses the tail of the previous edge, so
        // non-consecutive edges overlap in <= ell vertices too
        int n = 0;
        for (const auto& e : edges)
            for (Vertex v : e) n = std::max(n, v);
        Model m = Model::empty(sig, n);
        for (const auto& e : edges) {
            Tuple t(e.begin(), e.end());
            std::sort(t.begin(), t.end());
            do {
                m.rels[0].push_back(t);
            } while (std::next_permutation(t.begin(), t.end()));
        }
        m.normalize();
        hosts.push_back(std::move(m));
    }
    return hosts;
}

} // namespace

Report clique_disc_test(const Theon& t, const CliqueDiscConfig& cfg, std::uint64_t seed) {
    Report rep;
    rep.command = "test";
    rep.seed = seed;
    if (t.theory.sig.preds.size() != 1) throw std::invalid_argument("clique_disc_test: theon must be over a k-hypergraph theory");
    const int k = t.theory.sig.preds[0].arity;
    if (cfg.ell < 1 || cfg.ell >= k) throw std::invalid_argument("clique_disc_test: ell must be in [1, k-1]");
    rep.params = {{"property", "clique-disc"}, {"theon", theon_param(t)},   {"level", cfg.ell},
                  {"probes", cfg.probes},      {"inner_samples", cfg.inner_samples},
                  {"host_samples", cfg.host_samples}, {"alpha", cfg.alpha}, {"z_gate", cfg.z_gate}};
    rep.n_samples = cfg.probes * cfg.inner_samples;

    // (a) flattening constancy at random low points
    std::vector<double> west;
    for (int probe = 0; probe < cfg.probes; ++probe) {
        Point low = sample_point(k, std::min(cfg.ell, k), t.dims, split_seed(seed, 1000 + probe));
        DensityEstimate w = estimate_flattening(t, 0, cfg.ell, low, cfg.inner_samples, split_seed(seed, 2000 + probe));
        west.push_back(w.value);
        rep.add_estimate("flattening_probe_" + std::to_string(probe), w);
    }
    double mean = std::accumulate(west.begin(), west.end(), 0.0) / west.size();
    double var_stat = 0.0;
    const double noise = mean * (1.0 - mean) / (double)cfg.inner_samples;
    bool variance_reject = false;
    double variance_p = 1.0;
    if (noise > 0) {
        for (double w : west) var_stat += (w - mean) * (w - mean) / noise;
        variance_p = chi2_sf(var_stat, (double)cfg.probes - 1.0);
        variance_reject = variance_p < cfg.alpha;
    } else if (std::any_of(west.begin(), west.end(), [&](double w) { return w != mean; })) {
        variance_reject = true;
        variance_p = 0.0;
    }

    // (b) ell-linear host densities: q_H = p^{e(H)}
    auto hosts = cfg.linear_hosts.empty() ? default_linear_hosts(k, cfg.ell) : cfg.linear_hosts;
    // edge density estimated on an independent batch
    Model rho = Model::empty(t.theory.sig, k);
    {
        Tuple e(k);
        std::iota(e.begin(), e.end(), 1);
        std::sort(e.begin(), e.end());
        do {
            rho.rels[0].push_back(e);
        } while (std::next_permutation(e.begin(), e.end()));
        rho.normalize();
    }
    auto [p_lab, p_unl] = estimate_density(t, rho, cfg.host_samples, split_seed(seed, 1), cfg.threads);
    rep.add_estimate("edge_density", p_lab);
    double worst_z = 0.0;
    int worst_host = -1;
    for (size_t h = 0; h < hosts.size(); ++h) {
        const Model& H = hosts[h];
        const std::uint64_t edges = [&] {
            std::set<std::vector<Vertex>> sets;
            for (const auto& tup : H.rels[0]) {
                auto s = tup;
                std::sort(s.begin(), s.end());
                sets.insert(s);
            }
            return (std::uint64_t)sets.size();
        }();
        // non-induced labeled pattern: all edge tuples of H present
        Realizer r(t, H.n);
        struct State {
            Point pt;
            std::uint64_t hits = 0;
        };
        auto make = [&] { return State{Point(H.n, t.max_arity(), t.dims), 0}; };
        auto per_sample = [&](State& st, Rng& rng) {
            sample_point_into(st.pt, rng);
            bool all = true;
            for (const auto& tup : H.rels[0])
                if (!eval_expr(t.peons[0], st.pt, tup.data(), k)) {
                    all = false;
                    break;
                }
            if (all) ++st.hits;
        };
        auto merge = [](State& a, State& b) { a.hits += b.hits; };
        State st = mc_run<State>(cfg.host_samples, split_seed(seed, 2 + h), cfg.threads, make, per_sample, merge);
        DensityEstimate q = bernoulli_estimate(st.hits, cfg.host_samples, seed);
        rep.add_estimate("host_" + std::to_string(h) + "_density", q);
        const double expect = std::pow(p_lab.value, (double)edges);
        const double se_expect = edges * std::pow(std::max(p_lab.value, 1e-12), (double)edges - 1.0) * p_lab.stderr_;
        const double z = std::abs(z_gap(q.value, q.stderr_, expect, se_expect));
        if (z > std::abs(worst_z)) {
            worst_z = z;
            worst_host = (int)h;
        }
    }
    const bool host_reject = std::abs(worst_z) > cfg.z_gate;

    rep.statistic = var_stat;
    rep.p_value = variance_p;
    rep.decision = (variance_reject || host_reject) ? "reject" : "pass";
    if (rep.decision == "reject") {
        rep.evidence = nlohmann::json::object();
        if (variance_reject) rep.evidence["flattening_variance"] = {{"chi2", var_stat}, {"p", variance_p}};
        if (host_reject) rep.evidence["host"] = {{"index", worst_host}, {"z", worst_z}};
    }
    rep.note = "falsifier for CliqueDisc[ell]: flattening constancy + ell-linear host densities";
    return rep;
}

Report disc_test(const Theon& coupled, const DiscConfig& cfg, std::uint64_t seed) {
    Report rep;
    rep.command = "test";
    rep.seed = seed;
    rep.n_samples = cfg.n_samples;
    auto events_json = nlohmann::json::array();
    for (const auto& [p, tup] : cfg.events)
        events_json.push_back({{"predicate", coupled.theory.sig.preds[p].name}, {"tuple", tup}});
    rep.params = {{"property", "disc"},       {"theon", theon_param(coupled)}, {"edge_predicate", coupled.theory.sig.preds[cfg.edge_pred].name},
                  {"events", events_json},    {"n_samples", cfg.n_samples},    {"z_gate", cfg.z_gate}};

    const int k = coupled.theory.sig.preds[cfg.edge_pred].arity;
    int n = k;
    for (const auto& [p, tup] : cfg.events)
        for (Vertex v : tup) n = std::max(n, v);

    auto run = [&](std::uint64_t stream, auto&& hit) {
        struct State {
            Point pt;
            std::uint64_t hits = 0;
        };
        auto make = [&] { return State{Point(n, coupled.max_arity(), coupled.dims), 0}; };
        auto per_sample = [&](State& st, Rng& rng) {
            sample_point_into(st.pt, rng);
            if (hit(st.pt)) ++st.hits;
        };
        auto merge = [](State& a, State& b) { a.hits += b.hits; };
        State st = mc_run<State>(cfg.n_samples, split_seed(seed, stream), cfg.threads, make, per_sample, merge);
        return bernoulli_estimate(st.hits, cfg.n_samples, seed);
    };
    Tuple id(k);
    std::iota(id.begin(), id.end(), 1);
    auto edge_event = [&](const Point& pt) { return eval_expr(coupled.peons[cfg.edge_pred], pt, id.data(), k); };
    auto aux_event = [&](const Point& pt) {
        for (const auto& [p, tup] : cfg.events)
            if (!eval_expr(coupled.peons[p], pt, tup.data(), (int)tup.size())) return false;
        return true;
    };

    DensityEstimate joint = run(0, [&](const Point& pt) { return edge_event(pt) && aux_event(pt); });
    DensityEstimate edge = run(1, edge_event);
    DensityEstimate aux = run(2, aux_event);
    rep.add_estimate("joint", joint);
    rep.add_estimate("edge", edge);
    rep.add_estimate("events", aux);

    const double prod = edge.value * aux.value;
    const double se_prod = std::sqrt(aux.value * aux.value * edge.stderr_ * edge.stderr_ +
                                     edge.value * edge.value * aux.stderr_ * aux.stderr_);
    const double z = z_gap(joint.value, joint.stderr_, prod, se_prod);
    rep.statistic = z;
    rep.decision = std::abs(z) > cfg.z_gate ? "reject" : "pass";
    if (rep.decision == "reject")
        rep.evidence = {{"joint", joint.value}, {"product", prod}, {"z", z}};
    rep.note = "Disc falsifier: joint vs product of the edge event and the P_A events";
    return rep;
}

Report coupleability_falsifier(const Theon& candidate, const CoupleabilityConfig& cfg, std::uint64_t seed) {
    Report rep;
    rep.command = "test";
    rep.seed = seed;
    rep.n_samples = cfg.n_samples;
    rep.params = {{"property", "coupleability"}, {"theon", theon_param(candidate)}, {"n_samples", cfg.n_samples},
                  {"max_model_size", cfg.max_model_size}, {"z_gate", cfg.z_gate}};
    if (candidate.coupling_blocks.size() < 2)
        throw std::invalid_argument("coupleability_falsifier: candidate must be a coupling with identified blocks");

    const size_t blocks = candidate.coupling_blocks.size();
    std::vector<Theon> reducts;
    std::vector<Interpretation> erasures;
    for (size_t b = 0; b < blocks; ++b) {
        reducts.push_back(coupling_reduct(candidate, b));
        erasures.push_back(coupling_erasing_interpretation(candidate, b));
    }

    double worst_z = 0.0;
    std::string worst_model;
    double worst_joint = 0, worst_prod = 0;
    for (int n = 1; n <= cfg.max_model_size; ++n) {
        // independent counting passes: candidate plus each reduct
        Realizer cr(candidate, n);
        CellCounts joint_counts = count_cells(cr, cfg.n_samples, split_seed(seed, 10 * n), cfg.threads);
        std::vector<Realizer> rr;
        std::vector<CellCounts> reduct_counts;
        for (size_t b = 0; b < blocks; ++b) {
            rr.emplace_back(reducts[b], n);
            reduct_counts.push_back(count_cells(rr[b], cfg.n_samples, split_seed(seed, 10 * n + 1 + b), cfg.threads));
        }
        for (const auto& cls : enumerate_models(candidate.theory, n, cfg.budget)) {
            const Model& M = cls.rep;
            const Bits key = cr.bits_of(M);
            auto it = joint_counts.find(key);
            const std::uint64_t joint_hits = it == joint_counts.end() ? 0 : it->second;
            DensityEstimate joint = bernoulli_estimate(joint_hits, cfg.n_samples, seed);
            double prod = 1.0, se_rel_sq = 0.0;
            bool any_zero = false;
            for (size_t b = 0; b < blocks; ++b) {
                Model Mb = apply_interpretation(erasures[b], M);
                const Bits kb = rr[b].bits_of(Mb);
                auto jt = reduct_counts[b].find(kb);
                const std::uint64_t hits = jt == reduct_counts[b].end() ? 0 : jt->second;
                DensityEstimate fb = bernoulli_estimate(hits, cfg.n_samples, seed);
                if (fb.value == 0.0) any_zero = true;
                prod *= fb.value;
                if (fb.value > 0) se_rel_sq += (fb.stderr_ / fb.value) * (fb.stderr_ / fb.value);
            }
            const double se_prod = any_zero ? 0.0 : prod * std::sqrt(se_rel_sq);
            const double z = z_gap(joint.value, joint.stderr_, prod, se_prod);
            if (std::abs(z) > std::abs(worst_z)) {
                worst_z = z;
                worst_model = serialize_model(M);
                worst_joint = joint.value;
                worst_prod = prod;
            }
        }
    }
    rep.statistic = worst_z;
    rep.decision = std::abs(worst_z) > cfg.z_gate ? "reject" : "pass";
    if (rep.decision == "reject")
        rep.evidence = {{"witness_model", worst_model}, {"joint", worst_joint}, {"product", worst_prod}, {"z", worst_z}};
    rep.note = "compares coupled labeled densities against the syntactic product of reduct densities, independent batches";
    return rep;
}

} // namespace theonlab
