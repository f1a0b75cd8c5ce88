#include "theonlab/theon.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace theonlab {

void Theon::validate() const {
    if (peons.size() != theory.sig.preds.size())
        throw std::invalid_argument("theon '" + name + "': one expression per predicate required");
    for (size_t p = 0; p < peons.size(); ++p) {
        if (peons[p].max_position() > theory.sig.preds[p].arity)
            throw std::invalid_argument("theon '" + name + "': expression for " + theory.sig.preds[p].name +
                                        " references positions beyond its arity");
        if (peons[p].max_factor() >= dims)
            throw std::invalid_argument("theon '" + name + "': expression for " + theory.sig.preds[p].name +
                                        " references a factor beyond the ground space");
    }
    if (!coupling_blocks.empty()) {
        size_t total = 0;
        for (int b : coupling_blocks) total += (size_t)b;
        if (total != theory.sig.preds.size())
            throw std::invalid_argument("theon '" + name + "': coupling blocks do not cover the signature");
    }
}

bool eval_membership(const Theon& t, int pred, const Point& x, const Vertex* tuple) {
    return eval_expr(t.peons[pred], x, tuple, t.theory.sig.preds[pred].arity);
}

bool eval_membership_id(const Theon& t, int pred, const Point& x) {
    Vertex id[32];
    const int k = t.theory.sig.preds[pred].arity;
    for (int i = 0; i < k; ++i) id[i] = i + 1;
    return eval_expr(t.peons[pred], x, id, k);
}

Model realize_model(const Theon& t, const Point& theta) {
    const int n = theta.n();
    Model out = Model::empty(t.theory.sig, n);
    for (size_t p = 0; p < t.peons.size(); ++p) {
        const int k = t.theory.sig.preds[p].arity;
        if (k > n) continue;
        Tuple tup(k);
        std::vector<bool> used(n + 1, false);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == k) {
                if (eval_expr(t.peons[p], theta, tup.data(), k)) out.rels[p].push_back(tup);
                return;
            }
            for (Vertex v = 1; v <= n; ++v) {
                if (used[v]) continue;
                used[v] = true;
                tup[pos] = v;
                rec(pos + 1);
                used[v] = false;
            }
        };
        rec(0);
        std::sort(out.rels[p].begin(), out.rels[p].end());
    }
    return out;
}

Theon independent_coupling(const std::vector<Theon>& ts, const std::vector<std::string>& suffixes) {
    if (ts.empty()) throw std::invalid_argument("independent_coupling: no factors");
    if (!suffixes.empty() && suffixes.size() != ts.size())
        throw std::invalid_argument("independent_coupling: one suffix per factor required");

    Theon out;
    out.name = "indep(";
    Theory acc;
    int dim_offset = 0;
    int min_indep = INT_MAX, max_rank = 0;
    bool have_ranks = true, have_indep = true;
    for (size_t i = 0; i < ts.size(); ++i) {
        Theory block = ts[i].theory;
        if (!suffixes.empty() && !suffixes[i].empty()) block = rename_predicates(block, suffixes[i]);
        acc = i == 0 ? block : union_theory(acc, block); // throws on name clash
        for (const auto& e : ts[i].peons) out.peons.push_back(TheonExpr::factor_proj(dim_offset, e));
        out.coupling_blocks.push_back((int)ts[i].theory.sig.preds.size());
        out.name += (i ? "," : "") + ts[i].name;
        dim_offset += ts[i].dims;
        if (ts[i].declared_rank) max_rank = std::max(max_rank, *ts[i].declared_rank);
        else have_ranks = false;
        if (ts[i].declared_independence) min_indep = std::min(min_indep, *ts[i].declared_independence);
        else have_indep = false;
    }
    out.name += ")";
    out.theory = std::move(acc);
    out.theory.name = out.name;
    out.dims = dim_offset;
    if (have_ranks) out.declared_rank = max_rank;
    if (have_indep) out.declared_independence = min_indep;
    out.validate();
    return out;
}

Theon diagonal_self_coupling(const Theon& t) {
    Theon out;
    out.name = "diag(" + t.name + ")";
    out.theory = doubled_theory(t.theory);
    out.theory.name = out.name;
    out.dims = t.dims;
    out.peons = t.peons;
    out.peons.insert(out.peons.end(), t.peons.begin(), t.peons.end());
    out.coupling_blocks = {(int)t.theory.sig.preds.size(), (int)t.theory.sig.preds.size()};
    out.declared_rank = t.declared_rank;
    out.declared_independence = t.declared_independence;
    out.validate();
    return out;
}

Theon independent_self_coupling(const Theon& t) {
    Theon out = independent_coupling({t, t}, {"_1", "_2"});
    out.name = "indep2(" + t.name + ")";
    out.theory.name = out.name;
    return out;
}

namespace {

TheonExpr expr_of_formula(const Formula& f, const Theon& t) {
    switch (f.kind) {
        case Formula::Kind::Const:
            return TheonExpr::constant(f.value);
        case Formula::Kind::Eq:
            // evaluated over injective tuples only
            return TheonExpr::constant(f.vars[0] == f.vars[1]);
        case Formula::Kind::Atom:
            return TheonExpr::sub_point(f.vars, t.peons[f.pred]);
        case Formula::Kind::Not:
            return TheonExpr::negation(expr_of_formula(f.kids[0], t));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<TheonExpr> kids;
            kids.reserve(f.kids.size());
            for (const auto& k : f.kids) kids.push_back(expr_of_formula(k, t));
            return f.kind == Formula::Kind::And ? TheonExpr::conj(std::move(kids)) : TheonExpr::disj(std::move(kids));
        }
    }
    return TheonExpr::constant(false);
}

} // namespace

Theon interpret_theon(const Interpretation& i, const Theon& t) {
    if (!(i.target.sig == t.theory.sig))
        throw std::invalid_argument("interpret_theon: interpretation target must match the theon's signature");
    Theon out;
    out.name = i.name + "(" + t.name + ")";
    out.theory = i.source;
    out.dims = t.dims;
    for (const auto& f : i.formulas) out.peons.push_back(expr_of_formula(f, t));
    out.validate();
    return out;
}

namespace {

std::pair<int, int> block_range(const Theon& coupled, size_t block) {
    if (coupled.coupling_blocks.empty() || block >= coupled.coupling_blocks.size())
        throw std::invalid_argument("not a coupling, or block out of range");
    int start = 0;
    for (size_t i = 0; i < block; ++i) start += coupled.coupling_blocks[i];
    return {start, start + coupled.coupling_blocks[block]};
}

} // namespace

Theon coupling_reduct(const Theon& coupled, size_t block) {
    auto [lo, hi] = block_range(coupled, block);
    Theon out;
    out.name = coupled.name + "[" + std::to_string(block) + "]";
    out.theory.name = out.name;
    out.theory.sig.preds.assign(coupled.theory.sig.preds.begin() + lo, coupled.theory.sig.preds.begin() + hi);
    out.dims = coupled.dims;
    out.peons.assign(coupled.peons.begin() + lo, coupled.peons.begin() + hi);
    // axioms of the block cannot be recovered from the union in general;
    // reducts are used for sampling only, so none are attached
    out.validate();
    return out;
}

Interpretation coupling_erasing_interpretation(const Theon& coupled, size_t block) {
    auto [lo, hi] = block_range(coupled, block);
    Theory part;
    part.name = coupled.theory.name + "-block" + std::to_string(block);
    part.sig.preds.assign(coupled.theory.sig.preds.begin() + lo, coupled.theory.sig.preds.begin() + hi);
    return erasing_interpretation(part, coupled.theory, lo);
}

} // namespace theonlab
