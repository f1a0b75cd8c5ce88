#include "theonlab/theory.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace theonlab {

std::vector<AxiomViolation> check_axioms(const Theory& t, const Model& m) {
    std::vector<AxiomViolation> out;
    if (m.n == 0) return out;
    for (size_t a = 0; a < t.axioms.size(); ++a) {
        const int v = t.axioms[a].max_var();
        std::vector<Vertex> asg(std::max(v, 1), 1);
        // all assignments in [n]^v, including repeats
        while (true) {
            if (!eval_formula(t.axioms[a], m, asg)) out.push_back({(int)a, asg});
            int i = v - 1;
            while (i >= 0 && asg[i] == m.n) --i;
            if (i < 0) break;
            ++asg[i];
            for (int j = i + 1; j < v; ++j) asg[j] = 1;
        }
    }
    return out;
}

bool models(const Theory& t, const Model& m) { return check_axioms(t, m).empty(); }

Theory pure_theory(Signature sig, std::string name) {
    sig.validate();
    return Theory{std::move(name), std::move(sig), {}};
}

namespace {

Formula all_distinct(int k) {
    std::vector<Formula> kids;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) kids.push_back(Formula::negation(Formula::eq(i, j)));
    return Formula::conj(std::move(kids));
}

Formula implies(Formula a, Formula b) {
    std::vector<Formula> kids;
    kids.push_back(Formula::negation(std::move(a)));
    kids.push_back(std::move(b));
    return Formula::disj(std::move(kids));
}

Formula equiv(Formula a, Formula b) {
    std::vector<Formula> both, neither;
    both.push_back(a);
    both.push_back(b);
    neither.push_back(Formula::negation(std::move(a)));
    neither.push_back(Formula::negation(std::move(b)));
    std::vector<Formula> kids;
    kids.push_back(Formula::conj(std::move(both)));
    kids.push_back(Formula::conj(std::move(neither)));
    return Formula::disj(std::move(kids));
}

std::vector<int> identity_vars(int k) {
    std::vector<int> v(k);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

// variables permuted by the adjacent transposition (i, i+1)
std::vector<int> swapped_vars(int k, int i) {
    auto v = identity_vars(k);
    std::swap(v[i - 1], v[i]);
    return v;
}

} // namespace

Theory theory_hypergraph(int k) {
    if (k < 1) throw std::invalid_argument("hypergraph arity must be >= 1");
    Theory t;
    t.name = k == 2 ? "graph" : "hypergraph:k=" + std::to_string(k);
    t.sig = Signature{{{"E", k}}};
    // symmetry under adjacent transpositions generates S_k
    for (int i = 1; i < k; ++i)
        t.axioms.push_back(implies(Formula::atom(0, identity_vars(k)), Formula::atom(0, swapped_vars(k, i))));
    return t;
}

Theory theory_graph() { return theory_hypergraph(2); }

Theory theory_linear_order() {
    Theory t;
    t.name = "linear-order";
    t.sig = Signature{{{"LT", 2}}};
    // totality on distinct pairs; transitivity; irreflexivity is canonicity
    std::vector<Formula> tot;
    tot.push_back(Formula::atom(0, {1, 2}));
    tot.push_back(Formula::atom(0, {2, 1}));
    t.axioms.push_back(implies(all_distinct(2), Formula::disj(std::move(tot))));
    std::vector<Formula> chain;
    chain.push_back(Formula::atom(0, {1, 2}));
    chain.push_back(Formula::atom(0, {2, 3}));
    t.axioms.push_back(implies(Formula::conj(std::move(chain)), Formula::atom(0, {1, 3})));
    return t;
}

Theory theory_coloring(int c) {
    if (c < 1) throw std::invalid_argument("coloring needs >= 1 colors");
    Theory t;
    t.name = "coloring:c=" + std::to_string(c);
    Signature sig;
    for (int i = 1; i <= c; ++i) sig.preds.push_back({"C" + std::to_string(i), 1});
    t.sig = std::move(sig);
    std::vector<Formula> any;
    for (int i = 0; i < c; ++i) any.push_back(Formula::atom(i, {1}));
    t.axioms.push_back(Formula::disj(std::move(any)));
    for (int i = 0; i < c; ++i)
        for (int j = i + 1; j < c; ++j) {
            std::vector<Formula> kids;
            kids.push_back(Formula::negation(Formula::atom(i, {1})));
            kids.push_back(Formula::negation(Formula::atom(j, {1})));
            t.axioms.push_back(Formula::disj(std::move(kids)));
        }
    return t;
}

Theory theory_tournament(int k) {
    if (k < 2) throw std::invalid_argument("tournament arity must be >= 2");
    Theory t;
    t.name = k == 2 ? "tournament" : "tournament:k=" + std::to_string(k);
    t.sig = Signature{{{"E", k}}};
    // odd permutations flip membership: distinct -> (E(x.tau) <-> !E(x))
    for (int i = 1; i < k; ++i)
        t.axioms.push_back(implies(all_distinct(k),
                                   equiv(Formula::atom(0, swapped_vars(k, i)),
                                         Formula::negation(Formula::atom(0, identity_vars(k))))));
    return t;
}

namespace {

Formula remap_preds(Formula f, int offset) {
    if (f.kind == Formula::Kind::Atom) f.pred += offset;
    for (auto& k : f.kids) k = remap_preds(std::move(k), offset);
    return f;
}

} // namespace

Theory union_theory(const Theory& a, const Theory& b) {
    Theory t;
    t.name = a.name + "+" + b.name;
    t.sig = a.sig;
    for (const auto& p : b.sig.preds) {
        if (t.sig.index_of(p.name) >= 0)
            throw std::invalid_argument("union_theory: predicate name clash '" + p.name + "' (rename one side first)");
        t.sig.preds.push_back(p);
    }
    t.axioms = a.axioms;
    const int offset = (int)a.sig.preds.size();
    for (const auto& ax : b.axioms) t.axioms.push_back(remap_preds(ax, offset));
    return t;
}

Theory rename_predicates(Theory t, const std::string& suffix) {
    for (auto& p : t.sig.preds) p.name += suffix;
    return t;
}

Theory doubled_theory(const Theory& t) {
    return union_theory(rename_predicates(t, "_1"), rename_predicates(t, "_2"));
}

} // namespace theonlab
