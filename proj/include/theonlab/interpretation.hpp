#pragma once

#include <optional>
#include <string>
#include <vector>

#include "theonlab/formula.hpp"
#include "theonlab/theory.hpp"

namespace theonlab {

// Open interpretation I: source <- target. Maps each source predicate P to a
// quantifier-free formula over the target signature with k(P) free
// variables; induces Model(target) -> Model(source).
struct Interpretation {
    std::string name;
    Theory source;
    Theory target;
    std::vector<Formula> formulas; // by source predicate index

    void validate() const;
};

Model apply_interpretation(const Interpretation& i, const Model& m);

Interpretation identity_interpretation(const Theory& t);

// Structure-erasing interpretation part <- whole, matching predicates of
// `part` to the identically-named block of `whole` starting at pred_offset.
Interpretation erasing_interpretation(const Theory& part, const Theory& whole, int pred_offset);

// I u J acting componentwise on disjoint unions.
Interpretation union_interpretation(const Interpretation& i, const Interpretation& j);

// compose(i, j) with j.source == i.target: formulas of i with atoms expanded
// through j; interprets models of j.target directly into i.source.
Interpretation compose_interpretation(const Interpretation& i, const Interpretation& j);

struct InterpretationCheck {
    bool ok = true;
    int models_checked = 0;
    std::optional<Model> counterexample;       // model of dst whose image violates src
    std::vector<AxiomViolation> violations;
};

// Bounded verification: apply i to every model of dst up to nmax vertices
// and check the src axioms on the image. Soundness at all sizes is not
// claimed.
InterpretationCheck check_interpretation(const Interpretation& i, const Theory& src, const Theory& dst,
                                         int nmax, double budget = double(1ULL << 30));

// File format: one line `P(x1,...,xk) := <formula over target>` per source
// predicate.
Interpretation parse_interpretation(const std::string& text, const Theory& source, const Theory& target);
std::string serialize_interpretation(const Interpretation& i);

// Built-ins from the separation constructions.
Interpretation alternation_interpretation(int ell);    // hypergraph(ell+2) <- tournament(ell+1)
Interpretation arc_orientation_interpretation(int ell); // tournament(ell+1) <- hypergraph(ell+1) u linear-order
Interpretation complement_interpretation(int k);        // hypergraph(k) <- hypergraph(k)

// Edges are isomorphic copies of the alternating tournament A^{(ell+1)}_{ell+2};
// on tournament models this is the negation of the alternation equivalence.
Interpretation alternating_copies_interpretation(int ell);
// The same via the open diagram of A (a disjunction over S_{ell+2}); slower,
// kept as the literal construction for cross-checks.
Interpretation alternating_copies_diagram_interpretation(int ell);

// The alternating (ell+1)-tournament A^{(ell+1)}_{ell+2} itself.
Model alternating_tournament(int k); // on k+1 vertices, tuples of positive sign

} // namespace theonlab
