#pragma once

#include <cstdint>
#include <vector>

#include "theonlab/report.hpp"
#include "theonlab/theon.hpp"

namespace theonlab {

// Every operation here is a falsifier: the paper-side properties quantify
// over all couplings/representations, so "pass" means "no violation found
// under the documented probe family"; "reject" is sound up to the configured
// alpha / z gate and always carries replayable evidence.

// Representation probe for ell-independence: resample coordinates with
// |A| <= ell and reject on any membership flip at the identity tuple.
Report independence_probe(const Theon& t, int ell, std::uint64_t trials, std::uint64_t seed);

// Dual probe for rank <= r: resample coordinates with |A| > r.
Report rank_probe(const Theon& t, int r, std::uint64_t trials, std::uint64_t seed);

struct WeakIndepConfig {
    int ell = 1;
    int m = 3;            // realized model size; must be >= max arity
    std::uint64_t n_samples = 20000;
    int bins = 4;         // per low coordinate
    int n_proj = 3;       // random joint 2-coordinate projections
    double alpha = 1e-3;  // Bonferroni-corrected across all tables
    int threads = 1;
};

// Chi-square independence of the realized labeled model on [m] against each
// binned low coordinate theta_A (|A| <= ell) and against random joint
// projections.
Report weak_independence_test(const Theon& t, const WeakIndepConfig& cfg, std::uint64_t seed);

struct LocalityConfig {
    std::vector<std::vector<Vertex>> sets;
    bool symmetric = false; // marginals as isomorphism types
    std::uint64_t n_samples = 100000;
    double alpha = 1e-3;
    int threads = 1;
};

// Joint distribution of the marginals on the given vertex sets against the
// product of the marginal distributions.
Report locality_test(const Theon& t, const LocalityConfig& cfg, std::uint64_t seed);

struct CliqueDiscConfig {
    int ell = 1;
    int probes = 8;                     // random low points for flattening constancy
    std::uint64_t inner_samples = 20000;
    std::vector<Model> linear_hosts;    // empty -> built-in defaults
    std::uint64_t host_samples = 200000;
    double alpha = 1e-3;                // variance sub-test
    double z_gate = 4.0;                // host density sub-test
    int threads = 1;
};

// Two sub-tests, both must pass: (a) the ell-flattening is constant across
// random low points (variance test against inner-sample noise); (b) every
// ell-linear host H has non-induced labeled density p^{e(H)}.
Report clique_disc_test(const Theon& t, const CliqueDiscConfig& cfg, std::uint64_t seed);

struct DiscConfig {
    int edge_pred = 0;                         // hypergraph predicate of the coupling
    std::vector<std::pair<int, Tuple>> events; // (predicate, iota_A tuple)
    std::uint64_t n_samples = 200000;
    double z_gate = 4.0;
    int threads = 1;
};

// P[edge and all P_A events] vs P[edge] * P[all P_A events] on independent
// sample batches.
Report disc_test(const Theon& coupled, const DiscConfig& cfg, std::uint64_t seed);

struct CoupleabilityConfig {
    std::uint64_t n_samples = 200000;
    int max_model_size = 3;
    double z_gate = 4.0;
    int threads = 1;
    double budget = double(1ULL << 30);
};

// Scans all coupled models up to max_model_size comparing the candidate's
// labeled densities against the syntactic product of its reduct densities.
// Rejecting falsifies unique coupleability of the reducts whenever the
// candidate is a coupling other than the independent one.
Report coupleability_falsifier(const Theon& candidate, const CoupleabilityConfig& cfg, std::uint64_t seed);

} // namespace theonlab
