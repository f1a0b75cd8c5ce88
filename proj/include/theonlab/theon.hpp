#pragma once

#include <optional>
#include <string>
#include <vector>

#include "theonlab/interpretation.hpp"
#include "theonlab/point.hpp"
#include "theonlab/theon_expr.hpp"
#include "theonlab/theory.hpp"

namespace theonlab {

// Executable membership oracle: one expression per predicate, over a product
// of `dims` unit intervals. Immutable after construction; evaluation is pure.
struct Theon {
    std::string name;
    Theory theory;
    int dims = 1;
    std::vector<TheonExpr> peons; // by predicate index
    std::optional<int> declared_rank;
    std::optional<int> declared_independence;
    // set for couplings built by the constructors below: predicate counts of
    // the factor blocks, in order
    std::vector<int> coupling_blocks;

    int max_arity() const { return theory.sig.max_arity(); }
    void validate() const;
};

bool eval_membership(const Theon& t, int pred, const Point& x, const Vertex* tuple);
// convenience: membership of the identity tuple (1..k) on a point of E_k
bool eval_membership_id(const Theon& t, int pred, const Point& x);

Model realize_model(const Theon& t, const Point& theta);

// Product-space coupling: dimensions add, each factor's expressions wrapped
// in a factor offset. Predicate name clash is an error unless `suffixes`
// renames the factors.
Theon independent_coupling(const std::vector<Theon>& ts, const std::vector<std::string>& suffixes = {});

// Union theory with two copies (_1/_2) of each predicate, both evaluating
// the same expression on the same factor.
Theon diagonal_self_coupling(const Theon& t);

// Independent coupling of t with itself (copies renamed _1/_2).
Theon independent_self_coupling(const Theon& t);

// I(N): each source predicate evaluates i's formula pointwise, atoms reading
// membership of the sub-point projected along their argument tuple.
// realize(interpret_theon(i,t), theta) == apply_interpretation(i, realize(t, theta)).
Theon interpret_theon(const Interpretation& i, const Theon& t);

// Structure-erasing reduct of a coupling built by the constructors above.
Theon coupling_reduct(const Theon& coupled, size_t block);
Interpretation coupling_erasing_interpretation(const Theon& coupled, size_t block);

} // namespace theonlab
