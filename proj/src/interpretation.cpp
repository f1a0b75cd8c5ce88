#include "theonlab/interpretation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace theonlab {

namespace {

void check_atoms(const Formula& f, const Signature& target) {
    if (f.kind == Formula::Kind::Atom) {
        if (f.pred < 0 || f.pred >= (int)target.preds.size())
            throw std::invalid_argument("interpretation formula references a predicate outside the target signature");
        if ((int)f.vars.size() != target.preds[f.pred].arity)
            throw std::invalid_argument("interpretation formula: arity mismatch for " + target.preds[f.pred].name);
    }
    for (const auto& k : f.kids) check_atoms(k, target);
}

} // namespace

void Interpretation::validate() const {
    if (formulas.size() != source.sig.preds.size())
        throw std::invalid_argument("interpretation '" + name + "': every source predicate must be mapped");
    for (size_t p = 0; p < formulas.size(); ++p) {
        if (formulas[p].max_var() > source.sig.preds[p].arity)
            throw std::invalid_argument("interpretation '" + name + "': formula for " + source.sig.preds[p].name +
                                        " uses more variables than its arity");
        check_atoms(formulas[p], target.sig);
    }
}

Model apply_interpretation(const Interpretation& i, const Model& m) {
    if (!(m.sig == i.target.sig))
        throw std::invalid_argument("apply_interpretation: model signature does not match target");
    Model out = Model::empty(i.source.sig, m.n);
    for (size_t p = 0; p < i.source.sig.preds.size(); ++p) {
        const int k = i.source.sig.preds[p].arity;
        if (k > m.n) continue;
        std::vector<Vertex> asg(k);
        std::vector<bool> used(m.n + 1, false);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == k) {
                if (eval_formula(i.formulas[p], m, asg)) out.rels[p].push_back(asg);
                return;
            }
            for (Vertex v = 1; v <= m.n; ++v) {
                if (used[v]) continue;
                used[v] = true;
                asg[pos] = v;
                rec(pos + 1);
                used[v] = false;
            }
        };
        rec(0);
        std::sort(out.rels[p].begin(), out.rels[p].end());
    }
    return out;
}

Interpretation identity_interpretation(const Theory& t) {
    Interpretation i;
    i.name = "id:" + t.name;
    i.source = t;
    i.target = t;
    for (size_t p = 0; p < t.sig.preds.size(); ++p) {
        std::vector<int> vars(t.sig.preds[p].arity);
        std::iota(vars.begin(), vars.end(), 1);
        i.formulas.push_back(Formula::atom((int)p, std::move(vars)));
    }
    return i;
}

Interpretation erasing_interpretation(const Theory& part, const Theory& whole, int pred_offset) {
    Interpretation i;
    i.name = "erase:" + part.name;
    i.source = part;
    i.target = whole;
    for (size_t p = 0; p < part.sig.preds.size(); ++p) {
        const auto& tp = whole.sig.preds[pred_offset + (int)p];
        if (tp.arity != part.sig.preds[p].arity)
            throw std::invalid_argument("erasing_interpretation: arity mismatch at block offset");
        std::vector<int> vars(tp.arity);
        std::iota(vars.begin(), vars.end(), 1);
        i.formulas.push_back(Formula::atom(pred_offset + (int)p, std::move(vars)));
    }
    return i;
}

namespace {

Formula remap_atoms(Formula f, int offset) {
    if (f.kind == Formula::Kind::Atom) f.pred += offset;
    for (auto& k : f.kids) k = remap_atoms(std::move(k), offset);
    return f;
}

// substitute variable indices: var v -> subst[v-1]
Formula substitute_vars(Formula f, const std::vector<int>& subst) {
    for (auto& v : f.vars) v = subst[v - 1];
    for (auto& k : f.kids) k = substitute_vars(std::move(k), subst);
    return f;
}

Formula expand_through(const Formula& f, const Interpretation& j) {
    switch (f.kind) {
        case Formula::Kind::Atom:
            return substitute_vars(j.formulas[f.pred], f.vars);
        case Formula::Kind::Not: {
            return Formula::negation(expand_through(f.kids[0], j));
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<Formula> kids;
            kids.reserve(f.kids.size());
            for (const auto& k : f.kids) kids.push_back(expand_through(k, j));
            return f.kind == Formula::Kind::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
        }
        default:
            return f; // Const, Eq
    }
}

} // namespace

Interpretation union_interpretation(const Interpretation& i, const Interpretation& j) {
    Interpretation out;
    out.name = i.name + "+" + j.name;
    out.source = union_theory(i.source, j.source);
    out.target = union_theory(i.target, j.target);
    out.formulas = i.formulas;
    const int offset = (int)i.target.sig.preds.size();
    for (const auto& f : j.formulas) out.formulas.push_back(remap_atoms(f, offset));
    out.validate();
    return out;
}

Interpretation compose_interpretation(const Interpretation& i, const Interpretation& j) {
    if (!(j.source.sig == i.target.sig))
        throw std::invalid_argument("compose_interpretation: j's source must be i's target");
    Interpretation out;
    out.name = i.name + "*" + j.name;
    out.source = i.source;
    out.target = j.target;
    for (const auto& f : i.formulas) out.formulas.push_back(expand_through(f, j));
    out.validate();
    return out;
}

InterpretationCheck check_interpretation(const Interpretation& i, const Theory& src, const Theory& dst,
                                         int nmax, double budget) {
    InterpretationCheck report;
    for (int n = 1; n <= nmax && report.ok; ++n) {
        for (const auto& cls : enumerate_models(dst, n, budget)) {
            ++report.models_checked;
            Model image = apply_interpretation(i, cls.rep);
            auto bad = check_axioms(src, image);
            if (!bad.empty()) {
                report.ok = false;
                report.counterexample = cls.rep;
                report.violations = std::move(bad);
                break;
            }
        }
    }
    return report;
}

Interpretation parse_interpretation(const std::string& text, const Theory& source, const Theory& target) {
    Interpretation out;
    out.name = "file";
    out.source = source;
    out.target = target;
    out.formulas.resize(source.sig.preds.size(), Formula::constant(false));
    std::vector<bool> seen(source.sig.preds.size(), false);
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t i = 0;
        while (i < line.size() && isspace((unsigned char)line[i])) ++i;
        if (i == line.size() || line[i] == '#') continue;
        size_t assign = line.find(":=");
        if (assign == std::string::npos)
            throw std::invalid_argument("interpretation line " + std::to_string(lineno) + ": expected 'P(x1,...) := formula'");
        // head: P(x1,...,xk), variables must be x1..xk in order
        std::string head = line.substr(i, assign - i);
        size_t paren = head.find('(');
        if (paren == std::string::npos)
            throw std::invalid_argument("interpretation line " + std::to_string(lineno) + ": malformed head");
        std::string name = head.substr(0, paren);
        while (!name.empty() && isspace((unsigned char)name.back())) name.pop_back();
        int p = source.sig.index_of(name);
        if (p < 0) throw std::invalid_argument("interpretation line " + std::to_string(lineno) + ": unknown source predicate '" + name + "'");
        if (seen[p]) throw std::invalid_argument("interpretation line " + std::to_string(lineno) + ": duplicate mapping for '" + name + "'");
        seen[p] = true;
        out.formulas[p] = parse_formula(line.substr(assign + 2), target.sig, source.sig.preds[p].arity);
    }
    for (size_t p = 0; p < seen.size(); ++p)
        if (!seen[p]) throw std::invalid_argument("interpretation file: source predicate '" + source.sig.preds[p].name + "' is not mapped");
    out.validate();
    return out;
}

std::string serialize_interpretation(const Interpretation& i) {
    std::ostringstream os;
    for (size_t p = 0; p < i.source.sig.preds.size(); ++p) {
        os << i.source.sig.preds[p].name << "(";
        for (int v = 1; v <= i.source.sig.preds[p].arity; ++v) os << (v > 1 ? "," : "") << "x" << v;
        os << ") := " << print_formula(i.formulas[p], i.target.sig) << "\n";
    }
    return os.str();
}

namespace {

Formula equiv_f(Formula a, Formula b) {
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

Formula all_distinct_f(int k) {
    std::vector<Formula> kids;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) kids.push_back(Formula::negation(Formula::eq(i, j)));
    return Formula::conj(std::move(kids));
}

} // namespace

Interpretation alternation_interpretation(int ell) {
    // I(E)(x_1..x_{l+2}) = OR over l-subsets {i_1<..<i_l}:
    //   P(x_{i..}, x_{j1}) <-> P(x_{i..}, x_{j2}), {j1<j2} the complement
    const int k = ell + 2;
    Interpretation i;
    i.name = "alternation:ell=" + std::to_string(ell);
    i.source = theory_hypergraph(k);
    i.target = theory_tournament(ell + 1);
    std::vector<Formula> alts;
    std::vector<int> comb(ell);
    std::iota(comb.begin(), comb.end(), 1);
    while (true) {
        std::vector<int> rest;
        for (int v = 1; v <= k; ++v)
            if (std::find(comb.begin(), comb.end(), v) == comb.end()) rest.push_back(v);
        std::vector<int> a(comb.begin(), comb.end()), b(comb.begin(), comb.end());
        a.push_back(rest[0]);
        b.push_back(rest[1]);
        alts.push_back(equiv_f(Formula::atom(0, std::move(a)), Formula::atom(0, std::move(b))));
        int t = ell - 1;
        while (t >= 0 && comb[t] == k - (ell - 1 - t)) --t;
        if (t < 0) break;
        ++comb[t];
        for (int u = t + 1; u < ell; ++u) comb[u] = comb[u - 1] + 1;
    }
    i.formulas.push_back(Formula::disj(std::move(alts)));
    i.validate();
    return i;
}

Interpretation arc_orientation_interpretation(int ell) {
    // P(x_1..x_{l+1}) = distinct & (E(x) <-> x is an even permutation of the
    // LT-increasing order)
    const int k = ell + 1;
    Interpretation i;
    i.name = "arc-orientation:ell=" + std::to_string(ell);
    i.source = theory_tournament(k);
    i.target = union_theory(theory_hypergraph(k), theory_linear_order());
    const int lt = 1; // predicate index of LT in the union
    std::vector<Formula> evens;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        int inv = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                if (perm[a] > perm[b]) ++inv;
        if (inv % 2) continue;
        std::vector<Formula> chain;
        for (int a = 0; a + 1 < k; ++a) chain.push_back(Formula::atom(lt, {perm[a], perm[a + 1]}));
        evens.push_back(Formula::conj(std::move(chain)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<int> idv(k);
    std::iota(idv.begin(), idv.end(), 1);
    std::vector<Formula> kids;
    kids.push_back(all_distinct_f(k));
    kids.push_back(equiv_f(Formula::atom(0, idv), Formula::disj(std::move(evens))));
    i.formulas.push_back(Formula::conj(std::move(kids)));
    i.validate();
    return i;
}

Interpretation complement_interpretation(int k) {
    Interpretation i;
    i.name = "complement:k=" + std::to_string(k);
    i.source = theory_hypergraph(k);
    i.target = theory_hypergraph(k);
    std::vector<int> idv(k);
    std::iota(idv.begin(), idv.end(), 1);
    std::vector<Formula> kids;
    kids.push_back(all_distinct_f(k));
    kids.push_back(Formula::negation(Formula::atom(0, idv)));
    i.formulas.push_back(Formula::conj(std::move(kids)));
    i.validate();
    return i;
}

Model alternating_tournament(int k) {
    Model m = Model::empty(Signature{{{"E", k}}}, k + 1);
    // tuples whose unique extension to S_{k+1} is even
    std::function<void(Tuple&, std::vector<bool>&)> rec = [&](Tuple& cur, std::vector<bool>& used) {
        if ((int)cur.size() == k) {
            Perm ext(cur.begin(), cur.end());
            for (Vertex v = 1; v <= k + 1; ++v)
                if (!used[v]) ext.push_back(v);
            int inv = 0;
            for (size_t i = 0; i < ext.size(); ++i)
                for (size_t j = i + 1; j < ext.size(); ++j)
                    if (ext[i] > ext[j]) ++inv;
            if (inv % 2 == 0) m.rels[0].push_back(cur);
            return;
        }
        for (Vertex v = 1; v <= k + 1; ++v) {
            if (used[v]) continue;
            used[v] = true;
            cur.push_back(v);
            rec(cur, used);
            cur.pop_back();
            used[v] = false;
        }
    };
    Tuple cur;
    std::vector<bool> used(k + 2, false);
    rec(cur, used);
    m.normalize();
    return m;
}

Interpretation alternating_copies_interpretation(int ell) {
    // on tournaments, "induced copy of A^{(ell+1)}_{ell+2}" is exactly the
    // failure of every block equivalence (the only orientation patterns with
    // all adjacent blocks anti-aligned are the two labeled alternating ones)
    Interpretation alt = alternation_interpretation(ell);
    Interpretation i;
    i.name = "alternating-copies:ell=" + std::to_string(ell);
    i.source = alt.source;
    i.target = alt.target;
    std::vector<Formula> kids;
    kids.push_back(all_distinct_f(ell + 2));
    kids.push_back(Formula::negation(alt.formulas[0]));
    i.formulas.push_back(Formula::conj(std::move(kids)));
    i.validate();
    return i;
}

Interpretation alternating_copies_diagram_interpretation(int ell) {
    const int m = ell + 2;
    const Model A = alternating_tournament(ell + 1);
    Interpretation i;
    i.name = "alternating-copies-diagram:ell=" + std::to_string(ell);
    i.source = theory_hypergraph(m);
    i.target = theory_tournament(ell + 1);

    std::vector<Formula> copies;
    Perm sigma(m);
    std::iota(sigma.begin(), sigma.end(), 1);
    do {
        // open diagram of A with variables permuted by sigma
        std::vector<Formula> lits;
        for (int a = 1; a <= m; ++a)
            for (int b = a + 1; b <= m; ++b) lits.push_back(Formula::negation(Formula::eq(a, b)));
        Tuple tup(ell + 1);
        std::vector<bool> used(m + 1, false);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == ell + 1) {
                std::vector<int> vars(ell + 1);
                for (int q = 0; q <= ell; ++q) vars[q] = sigma[tup[q] - 1];
                Formula atom = Formula::atom(0, vars);
                lits.push_back(A.has(0, tup) ? atom : Formula::negation(atom));
                return;
            }
            for (Vertex v = 1; v <= m; ++v) {
                if (used[v]) continue;
                used[v] = true;
                tup[pos] = v;
                rec(pos + 1);
                used[v] = false;
            }
        };
        rec(0);
        copies.push_back(Formula::conj(std::move(lits)));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    i.formulas.push_back(Formula::disj(std::move(copies)));
    i.validate();
    return i;
}

} // namespace theonlab
