#include "theonlab/estimation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "theonlab/mc.hpp"

namespace theonlab {

DensityEstimate bernoulli_estimate(std::uint64_t hits, std::uint64_t n, std::uint64_t seed) {
    DensityEstimate e;
    e.n_samples = n;
    e.seed = seed;
    e.value = n ? (double)hits / (double)n : 0.0;
    e.stderr_ = n ? std::sqrt(e.value * (1.0 - e.value) / (double)n) : 0.0;
    return e;
}

double z_gap(double a, double se_a, double b, double se_b) {
    const double se = std::sqrt(se_a * se_a + se_b * se_b);
    if (se == 0.0) return a == b ? 0.0 : std::numeric_limits<double>::infinity();
    return (a - b) / se;
}

size_t BitsHash::operator()(const Bits& b) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w : b) h = mix64(h ^ w);
    return (size_t)h;
}

namespace {

std::vector<Tuple> lex_injective_tuples(int n, int k) {
    std::vector<Tuple> out;
    if (k > n) return out;
    Tuple cur(k);
    std::vector<bool> used(n + 1, false);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == k) { out.push_back(cur); return; }
        for (Vertex v = 1; v <= n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            cur[pos] = v;
            rec(pos + 1);
            used[v] = false;
        }
    };
    rec(0);
    return out;
}

} // namespace

Realizer::Realizer(const Theon& t, int n) : theon_(&t), n_(n) {
    size_t offset = 0;
    for (const auto& p : t.theory.sig.preds) {
        tuples_.push_back(lex_injective_tuples(n, p.arity));
        word_offset_.push_back(offset);
        offset += (tuples_.back().size() + 63) / 64;
    }
    words_ = offset;
}

void Realizer::realize(const Point& pt, Bits& out) const {
    out.assign(words_, 0);
    for (size_t p = 0; p < tuples_.size(); ++p) {
        const int k = theon_->theory.sig.preds[p].arity;
        const auto& expr = theon_->peons[p];
        for (size_t i = 0; i < tuples_[p].size(); ++i)
            if (eval_expr(expr, pt, tuples_[p][i].data(), k))
                out[word_offset_[p] + i / 64] |= 1ULL << (i % 64);
    }
}

Bits Realizer::bits_of(const Model& m) const {
    if (m.n != n_) throw std::invalid_argument("Realizer::bits_of: vertex count mismatch");
    Bits out(words_, 0);
    for (size_t p = 0; p < tuples_.size(); ++p)
        for (size_t i = 0; i < tuples_[p].size(); ++i)
            if (m.has((int)p, tuples_[p][i])) out[word_offset_[p] + i / 64] |= 1ULL << (i % 64);
    return out;
}

Model Realizer::model_of(const Bits& bits) const {
    Model m = Model::empty(theon_->theory.sig, n_);
    for (size_t p = 0; p < tuples_.size(); ++p)
        for (size_t i = 0; i < tuples_[p].size(); ++i)
            if (bits[word_offset_[p] + i / 64] >> (i % 64) & 1) m.rels[p].push_back(tuples_[p][i]);
    return m;
}

int Realizer::realize_match(const Point& pt, const std::vector<Bits>& targets) const {
    std::uint64_t alive = targets.size() >= 64 ? ~0ULL : (1ULL << targets.size()) - 1;
    if (targets.size() > 64) throw std::invalid_argument("realize_match: at most 64 targets");
    for (size_t p = 0; p < tuples_.size() && alive; ++p) {
        const int k = theon_->theory.sig.preds[p].arity;
        const auto& expr = theon_->peons[p];
        for (size_t i = 0; i < tuples_[p].size() && alive; ++i) {
            const bool bit = eval_expr(expr, pt, tuples_[p][i].data(), k);
            const size_t w = word_offset_[p] + i / 64;
            const std::uint64_t mask = 1ULL << (i % 64);
            std::uint64_t still = alive;
            while (still) {
                const int tgt = std::countr_zero(still);
                still &= still - 1;
                if (((targets[tgt][w] & mask) != 0) != bit) alive &= ~(1ULL << tgt);
            }
        }
    }
    return alive ? std::countr_zero(alive) : -1;
}

std::vector<Bits> Realizer::orbit_bits(const Model& m) const {
    if (m.n != n_) throw std::invalid_argument("orbit_bits: vertex count mismatch");
    std::set<Bits> seen;
    Perm perm(n_);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        seen.insert(bits_of(relabel(m, perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {seen.begin(), seen.end()};
}

CellCounts count_cells(const Realizer& r, std::uint64_t n_samples, std::uint64_t seed, int threads) {
    struct State {
        Point pt;
        Bits scratch;
        CellCounts counts;
    };
    const Theon& t = r.theon();
    auto make = [&] { return State{Point(r.n(), t.max_arity(), t.dims), Bits(), CellCounts()}; };
    auto per_sample = [&](State& st, Rng& rng) {
        sample_point_into(st.pt, rng);
        r.realize(st.pt, st.scratch);
        ++st.counts[st.scratch];
    };
    auto merge = [](State& acc, State& part) {
        for (auto& [k, v] : part.counts) acc.counts[k] += v;
    };
    return mc_run<State>(n_samples, seed, threads, make, per_sample, merge).counts;
}

std::pair<DensityEstimate, DensityEstimate> estimate_density(const Theon& t, const Model& m, std::uint64_t n_samples,
                                                             std::uint64_t seed, int threads) {
    Realizer r(t, m.n);
    const Bits target = r.bits_of(m);
    auto orbit = r.orbit_bits(m);
    std::sort(orbit.begin(), orbit.end());

    struct State {
        Point pt;
        Bits scratch;
        std::uint64_t labeled = 0, unlabeled = 0;
    };
    auto make = [&] { return State{Point(m.n, t.max_arity(), t.dims), Bits(), 0, 0}; };
    auto per_sample = [&](State& st, Rng& rng) {
        sample_point_into(st.pt, rng);
        r.realize(st.pt, st.scratch);
        if (st.scratch == target) ++st.labeled;
        if (std::binary_search(orbit.begin(), orbit.end(), st.scratch)) ++st.unlabeled;
    };
    auto merge = [](State& acc, State& part) {
        acc.labeled += part.labeled;
        acc.unlabeled += part.unlabeled;
    };
    State st = mc_run<State>(n_samples, seed, threads, make, per_sample, merge);
    return {bernoulli_estimate(st.labeled, n_samples, seed), bernoulli_estimate(st.unlabeled, n_samples, seed)};
}

Point sample_theta(int n, const GroundSpace& space, int max_arity, std::uint64_t seed) {
    return sample_point(n, max_arity, space.dims, seed);
}

DensityEstimate estimate_flattening(const Theon& t, int pred, int ell, const Point& low, std::uint64_t inner_samples,
                                    std::uint64_t seed) {
    const int k = t.theory.sig.preds[pred].arity;
    if (ell >= k) throw std::invalid_argument("estimate_flattening: ell must be < k(P)");
    Point pt(k, k, t.dims);
    // plant the low coordinates once; only |A| > ell get resampled
    for (auto mask : pt.table.masks)
        if (std::popcount(mask) <= ell)
            for (int f = 0; f < t.dims; ++f) pt.coord(mask, f) = low.coord(mask, f);
    Rng rng(split_seed(seed, 0));
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < inner_samples; ++i) {
        resample_high(pt, ell, rng);
        if (eval_membership_id(t, pred, pt)) ++hits;
    }
    return bernoulli_estimate(hits, inner_samples, seed);
}

DensityEstimate density_via_flattenings(const Theon& t, const Model& K, std::uint64_t outer, std::uint64_t inner,
                                        std::uint64_t seed) {
    const int m = K.n;
    const int k = t.max_arity();
    // k-subsets of [m], with the tuples covered by each
    std::vector<std::uint32_t> ksets;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask)
        if (std::popcount(mask) == k) ksets.push_back(mask);
    if (ksets.empty()) throw std::invalid_argument("density_via_flattenings: |K| < max arity");

    struct Check {
        int pred;
        Tuple tuple;
        bool expected;
    };
    // per k-set: every tuple with image inside it, compared against K
    std::vector<std::vector<Check>> checks(ksets.size());
    for (size_t s = 0; s < ksets.size(); ++s) {
        for (size_t p = 0; p < t.theory.sig.preds.size(); ++p) {
            for (const auto& tup : lex_injective_tuples(m, t.theory.sig.preds[p].arity)) {
                std::uint32_t im = 0;
                for (Vertex v : tup) im |= 1u << (v - 1);
                if ((im & ~ksets[s]) == 0) checks[s].push_back({(int)p, tup, K.has((int)p, tup)});
            }
        }
    }

    Point pt(m, k, t.dims);
    Rng outer_rng(split_seed(seed, 0));
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t o = 0; o < outer; ++o) {
        sample_point_into(pt, outer_rng); // low coords; |A| = k entries get overwritten per inner pass
        double prod = 1.0;
        for (size_t s = 0; s < ksets.size() && prod > 0.0; ++s) {
            // independent inner seed per (outer probe, k-set)
            Rng inner_rng(split_seed(seed, 1 + o * ksets.size() + s));
            std::uint64_t hits = 0;
            for (std::uint64_t i = 0; i < inner; ++i) {
                for (int f = 0; f < t.dims; ++f) pt.coord(ksets[s], f) = inner_rng.unit();
                bool ok = true;
                for (const auto& c : checks[s])
                    if (eval_expr(t.peons[c.pred], pt, c.tuple.data(), (int)c.tuple.size()) != c.expected) {
                        ok = false;
                        break;
                    }
                if (ok) ++hits;
            }
            prod *= (double)hits / (double)inner;
        }
        sum += prod;
        sumsq += prod * prod;
    }
    DensityEstimate e;
    e.n_samples = outer;
    e.seed = seed;
    e.value = sum / (double)outer;
    const double var = std::max(0.0, sumsq / (double)outer - e.value * e.value);
    e.stderr_ = std::sqrt(var / (double)outer);
    return e;
}

} // namespace theonlab
