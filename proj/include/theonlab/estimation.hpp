#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "theonlab/theon.hpp"

namespace theonlab {

struct DensityEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

DensityEstimate bernoulli_estimate(std::uint64_t hits, std::uint64_t n, std::uint64_t seed);

// z-score of (a - b) against combined standard errors.
double z_gap(double a, double se_a, double b, double se_b);

// Bit signature of a realized labeled model: per predicate, one bit per
// injective tuple in lexicographic order.
using Bits = std::vector<std::uint64_t>;

struct BitsHash {
    size_t operator()(const Bits& b) const;
};

// Precomputed tuple order for realizing a theon on [n] into Bits.
class Realizer {
public:
    Realizer(const Theon& t, int n);

    int n() const { return n_; }
    const Theon& theon() const { return *theon_; }
    size_t words() const { return words_; }

    void realize(const Point& pt, Bits& out) const;
    Bits bits_of(const Model& m) const;
    Model model_of(const Bits& bits) const;

    // index of the unique target matching the realized point, or -1;
    // evaluates lazily with early exit.
    int realize_match(const Point& pt, const std::vector<Bits>& targets) const;

    // all distinct labeled copies of m's isomorphism class on [n]
    std::vector<Bits> orbit_bits(const Model& m) const;

private:
    const Theon* theon_;
    int n_;
    size_t words_;
    std::vector<std::vector<Tuple>> tuples_;   // per predicate, lex order
    std::vector<size_t> word_offset_;          // per predicate
};

using CellCounts = std::unordered_map<Bits, std::uint64_t, BitsHash>;

// One realization pass counting every labeled model cell.
CellCounts count_cells(const Realizer& r, std::uint64_t n_samples, std::uint64_t seed, int threads);

// Labeled and unlabeled induced density of m under t (cryptomorphism
// sampling rule). unlabeled ~= labeled * n!/|Aut(m)|.
std::pair<DensityEstimate, DensityEstimate> estimate_density(const Theon& t, const Model& m, std::uint64_t n_samples,
                                                             std::uint64_t seed, int threads = 1);

// theta for [n]: i.i.d. uniforms over r(n, max_arity), deterministic given
// seed (spec sample_theta).
Point sample_theta(int n, const GroundSpace& space, int max_arity, std::uint64_t seed);

// W^ell_N(low): resample all coordinates with |A| > ell, keep `low`.
// low must be a Point on [k(P)] with maxar >= ell (only |A| <= ell read).
DensityEstimate estimate_flattening(const Theon& t, int pred, int ell, const Point& low, std::uint64_t inner_samples,
                                    std::uint64_t seed);

// Nested-MC labeled density via the product of per-k-set flattenings
// integrated over low coordinates; cross-checks estimate_density.
DensityEstimate density_via_flattenings(const Theon& t, const Model& K, std::uint64_t outer, std::uint64_t inner,
                                        std::uint64_t seed);

} // namespace theonlab
