#include "theonlab/density_calc.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "theonlab/mc.hpp"

namespace theonlab {

namespace {

std::vector<Perm> all_perms(int k) {
    std::vector<Perm> out;
    Perm p(k);
    std::iota(p.begin(), p.end(), 1);
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int perm_sign(const Perm& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

Perm compose_perm(const Perm& a, const Perm& b) { // (a o b)(i) = a(b(i))
    Perm out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[b[i] - 1];
    return out;
}

} // namespace

ActionTable ActionTable::trivial(int k, std::vector<std::string> predicates) {
    ActionTable at;
    at.k = k;
    at.predicates = std::move(predicates);
    at.perms = all_perms(k);
    at.action.assign(at.perms.size(), {});
    for (auto& row : at.action) {
        row.resize(at.predicates.size());
        std::iota(row.begin(), row.end(), 0);
    }
    at.validate();
    return at;
}

ActionTable ActionTable::sign(int k) {
    ActionTable at;
    at.k = k;
    at.predicates = {"Even", "Odd"};
    at.perms = all_perms(k);
    for (const auto& p : at.perms)
        at.action.push_back(perm_sign(p) == 1 ? std::vector<int>{0, 1} : std::vector<int>{1, 0});
    at.validate();
    return at;
}

int ActionTable::perm_index(const Perm& p) const {
    auto it = std::lower_bound(perms.begin(), perms.end(), p);
    if (it == perms.end() || *it != p) throw std::invalid_argument("ActionTable: unknown permutation");
    return (int)(it - perms.begin());
}

void ActionTable::validate() const {
    if (k < 1) throw std::invalid_argument("ActionTable: k must be >= 1");
    if (predicates.empty()) throw std::invalid_argument("ActionTable: empty language");
    const size_t nperm = perms.size();
    size_t fact = 1;
    for (int i = 2; i <= k; ++i) fact *= (size_t)i;
    if (nperm != fact || action.size() != nperm)
        throw std::invalid_argument("ActionTable: table must cover all k! permutations");
    for (const auto& row : action) {
        if (row.size() != predicates.size()) throw std::invalid_argument("ActionTable: ragged action row");
        std::set<int> image(row.begin(), row.end());
        if (image.size() != row.size() || *image.begin() < 0 || *image.rbegin() >= (int)predicates.size())
            throw std::invalid_argument("ActionTable: rows must permute the language");
    }
    // identity law
    Perm id(k);
    std::iota(id.begin(), id.end(), 1);
    const auto& id_row = action[perm_index(id)];
    for (size_t p = 0; p < predicates.size(); ++p)
        if (id_row[p] != (int)p) throw std::invalid_argument("ActionTable: identity permutation must act trivially");
    // composition law: (a o b) . P = a . (b . P)
    for (size_t a = 0; a < nperm; ++a)
        for (size_t b = 0; b < nperm; ++b) {
            const int ab = perm_index(compose_perm(perms[a], perms[b]));
            for (size_t p = 0; p < predicates.size(); ++p)
                if (action[ab][p] != action[a][action[b][p]])
                    throw std::invalid_argument("ActionTable: composition law fails");
        }
}

void ActionTable::validate_probabilities(const std::vector<Rat>& p) const {
    if (p.size() != predicates.size()) throw std::invalid_argument("ActionTable: one probability per predicate required");
    Rat total(0);
    for (const auto& q : p) {
        if (q <= 0) throw std::invalid_argument("ActionTable: probabilities must be positive");
        total += q;
    }
    if (total != 1) throw std::invalid_argument("ActionTable: probabilities must sum to 1");
    for (const auto& row : action)
        for (size_t i = 0; i < p.size(); ++i)
            if (p[i] != p[row[i]]) throw std::invalid_argument("ActionTable: probabilities must be Theta-invariant");
}

nlohmann::json ActionTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t a = 0; a < perms.size(); ++a) {
        nlohmann::json maps = nlohmann::json::object();
        for (size_t p = 0; p < predicates.size(); ++p) maps[predicates[p]] = predicates[action[a][p]];
        rows.push_back({{"perm", perms[a]}, {"maps", maps}});
    }
    return {{"k", k}, {"predicates", predicates}, {"action", rows}};
}

ActionTable ActionTable::from_json(const nlohmann::json& j) {
    ActionTable at;
    at.k = j.at("k").get<int>();
    at.predicates = j.at("predicates").get<std::vector<std::string>>();
    at.perms = all_perms(at.k);
    at.action.assign(at.perms.size(), std::vector<int>(at.predicates.size(), -1));
    auto pred_index = [&](const std::string& name) {
        auto it = std::find(at.predicates.begin(), at.predicates.end(), name);
        if (it == at.predicates.end()) throw std::invalid_argument("ActionTable: unknown predicate '" + name + "'");
        return (int)(it - at.predicates.begin());
    };
    for (const auto& row : j.at("action")) {
        const Perm perm = row.at("perm").get<Perm>();
        const int a = at.perm_index(perm);
        for (const auto& [from, to] : row.at("maps").items())
            at.action[a][pred_index(from)] = pred_index(to.get<std::string>());
    }
    for (const auto& row : at.action)
        for (int v : row)
            if (v < 0) throw std::invalid_argument("ActionTable: incomplete action table");
    at.validate();
    return at;
}

Theory theory_of_action(const ActionTable& at) {
    Theory t;
    t.name = "action:k=" + std::to_string(at.k);
    for (const auto& name : at.predicates) t.sig.preds.push_back({name, at.k});
    t.sig.validate();

    std::vector<int> idv(at.k);
    std::iota(idv.begin(), idv.end(), 1);
    auto distinct = [&] {
        std::vector<Formula> kids;
        for (int i = 1; i <= at.k; ++i)
            for (int j = i + 1; j <= at.k; ++j) kids.push_back(Formula::negation(Formula::eq(i, j)));
        return Formula::conj(std::move(kids));
    };
    auto implies = [](Formula a, Formula b) {
        std::vector<Formula> kids;
        kids.push_back(Formula::negation(std::move(a)));
        kids.push_back(std::move(b));
        return Formula::disj(std::move(kids));
    };

    { // exactly one predicate on each distinct tuple
        std::vector<Formula> any;
        for (size_t p = 0; p < at.predicates.size(); ++p) any.push_back(Formula::atom((int)p, idv));
        t.axioms.push_back(implies(distinct(), Formula::disj(std::move(any))));
        for (size_t p = 0; p < at.predicates.size(); ++p)
            for (size_t q = p + 1; q < at.predicates.size(); ++q) {
                std::vector<Formula> kids;
                kids.push_back(Formula::negation(Formula::atom((int)p, idv)));
                kids.push_back(Formula::negation(Formula::atom((int)q, idv)));
                t.axioms.push_back(Formula::disj(std::move(kids)));
            }
    }
    // equivariance for adjacent transpositions: P(x.tau) <-> (tau.P)(x)
    for (int i = 1; i < at.k; ++i) {
        Perm tau(at.k);
        std::iota(tau.begin(), tau.end(), 1);
        std::swap(tau[i - 1], tau[i]);
        const int ti = at.perm_index(tau);
        std::vector<int> swapped = idv;
        std::swap(swapped[i - 1], swapped[i]);
        for (size_t p = 0; p < at.predicates.size(); ++p) {
            Formula lhs = Formula::atom((int)p, swapped);
            Formula rhs = Formula::atom(at.act(ti, (int)p), idv);
            std::vector<Formula> both, neither;
            both.push_back(lhs);
            both.push_back(rhs);
            neither.push_back(Formula::negation(std::move(lhs)));
            neither.push_back(Formula::negation(std::move(rhs)));
            std::vector<Formula> kids;
            kids.push_back(Formula::conj(std::move(both)));
            kids.push_back(Formula::conj(std::move(neither)));
            t.axioms.push_back(Formula::disj(std::move(kids)));
        }
    }
    return t;
}

Rat closed_form_qr_density(const ActionTable& at, const std::vector<Rat>& p, const Model& m) {
    at.validate_probabilities(p);
    const Theory t = theory_of_action(at);
    if (!(m.sig == t.sig)) throw std::invalid_argument("closed_form_qr_density: model signature must match T_Theta");
    if (!models(t, m)) throw std::invalid_argument("closed_form_qr_density: model violates the T_Theta axioms");

    // per k-subset: the predicate holding its increasing enumeration; the
    // Theta-invariance of p makes the k-set's total exponent integral
    Rat out(1);
    if (m.n < at.k) return out;
    std::vector<int> idx(at.k);
    std::iota(idx.begin(), idx.end(), 1);
    while (true) {
        Tuple iota(idx.begin(), idx.end());
        int holder = -1;
        for (size_t q = 0; q < at.predicates.size(); ++q)
            if (m.has((int)q, iota)) {
                holder = (int)q;
                break;
            }
        if (holder < 0) throw std::invalid_argument("closed_form_qr_density: no predicate holds a k-set (axioms violated)");
        out *= p[holder];
        int i = at.k - 1;
        while (i >= 0 && idx[i] == m.n - (at.k - 1 - i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < at.k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

Theon theta_qr_theon(const ActionTable& at, const std::vector<Rat>& p, std::string name) {
    at.validate_probabilities(p);
    Theon t;
    t.name = name.empty() ? "theta-qr:k=" + std::to_string(at.k) : std::move(name);
    t.theory = theory_of_action(at);
    t.dims = 1;
    t.declared_rank = at.k;
    t.declared_independence = std::nullopt; // k-1 only when the action allows a sigma_x-free form

    // interval partition Z in predicate order
    std::vector<double> cum(at.predicates.size() + 1, 0.0);
    Rat acc(0);
    for (size_t q = 0; q < p.size(); ++q) {
        acc += p[q];
        cum[q + 1] = rat_double(acc);
    }
    const std::uint32_t topset = (1u << at.k) - 1;
    auto interval = [&](int q) {
        std::vector<TheonExpr> kids;
        if (q > 0) kids.push_back(TheonExpr::thresh(topset, Cmp::Ge, cum[q]));
        kids.push_back(TheonExpr::thresh(topset, Cmp::Lt, cum[q + 1]));
        return TheonExpr::conj(std::move(kids));
    };
    auto order_cell = [&](const Perm& sigma) {
        // sigma_x = sigma  <=>  x_{sigma^{-1}(1)} < ... < x_{sigma^{-1}(k)}
        Perm inv(at.k);
        for (int i = 0; i < at.k; ++i) inv[sigma[i] - 1] = i + 1;
        std::vector<TheonExpr> chain;
        for (int r = 1; r < at.k; ++r)
            chain.push_back(TheonExpr::coord_lt(1u << (inv[r - 1] - 1), 1u << (inv[r] - 1)));
        return TheonExpr::conj(std::move(chain));
    };
    for (size_t q = 0; q < at.predicates.size(); ++q) {
        std::vector<TheonExpr> cells;
        for (size_t s = 0; s < at.perms.size(); ++s) {
            std::vector<TheonExpr> kids;
            if (at.k > 1) kids.push_back(order_cell(at.perms[s]));
            kids.push_back(interval(at.act((int)s, (int)q)));
            cells.push_back(TheonExpr::conj(std::move(kids)));
        }
        t.peons.push_back(TheonExpr::disj(std::move(cells)));
    }
    t.validate();
    return t;
}

Rat product_density(const std::vector<DensityOracle>& factors, const std::vector<Interpretation>& erasures,
                    const Model& coupled) {
    if (factors.size() != erasures.size()) throw std::invalid_argument("product_density: one erasure per factor");
    Rat out(1);
    for (size_t b = 0; b < factors.size(); ++b) {
        out *= factors[b](apply_interpretation(erasures[b], coupled));
        if (out == 0) return out;
    }
    return out;
}

DensityVector DensityVector::zero(Model base, int ell) {
    DensityVector v;
    v.base = std::move(base);
    v.ell = ell;
    for (std::uint32_t mask = 1; mask < (1u << v.base.n); ++mask)
        if (std::popcount(mask) == ell) v.family.push_back(mask);
    const std::uint64_t overlays = 1ULL << v.family.size();
    for (std::uint64_t u = 0; u < overlays; ++u) v.xi[u] = Rat(0);
    return v;
}

namespace {

DensityVector mobius_transform(const DensityVector& v, const Rat& scale_u, const Rat& weight) {
    // out(U) = scale_u^{|U|} sum_{W >= U} weight^{|W\U|} v(W)
    DensityVector out = v;
    const int F = v.family_size();
    for (auto& [u, val] : out.xi) {
        Rat sum(0);
        const std::uint64_t rest = ~u & ((F == 64 ? ~0ULL : (1ULL << F) - 1));
        // iterate supersets W = u | s, s subset of rest
        std::uint64_t s = 0;
        while (true) {
            sum += pow_rat(weight, (unsigned long)std::popcount(s)) * v.xi.at(u | s);
            if (s == rest) break;
            s = (s - rest) & rest; // next subset of rest
        }
        val = pow_rat(scale_u, (unsigned long)std::popcount(u)) * sum;
    }
    return out;
}

} // namespace

DensityVector dilute(const DensityVector& v, const Rat& t) {
    if (t <= 0 || t > 1) throw std::invalid_argument("dilute: t must lie in (0,1]");
    return mobius_transform(v, t, Rat(1) - t);
}

DensityVector mobius_inverse(const DensityVector& v, const Rat& t) {
    if (t <= 0 || t > 1) throw std::invalid_argument("mobius_inverse: t must lie in (0,1]");
    return mobius_transform(v, Rat(1) / t, Rat(1) - Rat(1) / t);
}

nlohmann::json density_vector_to_json(const DensityVector& v) {
    nlohmann::json overlays = nlohmann::json::object();
    for (const auto& [u, val] : v.xi) {
        nlohmann::json sets = nlohmann::json::array();
        for (int i = 0; i < v.family_size(); ++i)
            if (u >> i & 1) {
                std::vector<int> verts;
                for (int b = 0; b < v.base.n; ++b)
                    if (v.family[i] >> b & 1) verts.push_back(b + 1);
                sets.push_back(verts);
            }
        overlays[std::to_string(u)] = {{"sets", sets}, {"value", rat_str(val)}};
    }
    return {{"base", serialize_model(v.base)}, {"ell", v.ell}, {"overlays", overlays}};
}

DensityEstimate delta1_eval(const Theon& coupled, std::uint64_t n_samples, std::uint64_t seed, int threads) {
    if (coupled.coupling_blocks.size() != 2 || coupled.coupling_blocks[0] != coupled.coupling_blocks[1])
        throw std::invalid_argument("delta1_eval: theon must couple two copies of the same signature");
    const int P = coupled.coupling_blocks[0];
    for (int p = 0; p < P; ++p)
        if (coupled.theory.sig.preds[p].arity != coupled.theory.sig.preds[P + p].arity)
            throw std::invalid_argument("delta1_eval: copies disagree on arities");

    const int maxar = coupled.max_arity();
    struct State {
        Point pt;
        std::uint64_t sum = 0, sumsq = 0;
    };
    auto make = [&] { return State{Point(maxar, maxar, coupled.dims), 0, 0}; };
    auto per_sample = [&](State& st, Rng& rng) {
        sample_point_into(st.pt, rng);
        std::uint64_t s = 0;
        for (int p = 0; p < P; ++p) {
            const bool a = eval_membership_id(coupled, p, st.pt);
            const bool b = eval_membership_id(coupled, P + p, st.pt);
            if (a != b) ++s;
        }
        st.sum += s;
        st.sumsq += s * s;
    };
    auto merge = [](State& a, State& b) {
        a.sum += b.sum;
        a.sumsq += b.sumsq;
    };
    State st = mc_run<State>(n_samples, seed, threads, make, per_sample, merge);
    DensityEstimate e;
    e.n_samples = n_samples;
    e.seed = seed;
    e.value = (double)st.sum / (double)n_samples;
    const double second = (double)st.sumsq / (double)n_samples;
    e.stderr_ = std::sqrt(std::max(0.0, second - e.value * e.value) / (double)n_samples);
    return e;
}

} // namespace theonlab
