#pragma once

#include <string>
#include <vector>

#include "theonlab/formula.hpp"
#include "theonlab/model.hpp"

namespace theonlab {

// Canonical theory: signature plus open axioms (universal closures implied).
// The canonicity axioms (predicates false on repeated entries) are implicit;
// Model enforces them structurally and eval_formula enforces them on atoms.
struct Theory {
    std::string name;
    Signature sig;
    std::vector<Formula> axioms;
};

struct AxiomViolation {
    int axiom = 0;
    std::vector<Vertex> assignment;
};

std::vector<AxiomViolation> check_axioms(const Theory& t, const Model& m);
bool models(const Theory& t, const Model& m);

// Built-ins.
Theory pure_theory(Signature sig, std::string name = "pure");
Theory theory_graph();
Theory theory_hypergraph(int k);
Theory theory_linear_order();
Theory theory_coloring(int c);
Theory theory_tournament(int k);

// Disjoint union T1 u T2; throws on predicate-name clash.
Theory union_theory(const Theory& a, const Theory& b);
Theory rename_predicates(Theory t, const std::string& suffix);
// Union of t with itself, copies suffixed _1/_2 (used by self-couplings and d_T).
Theory doubled_theory(const Theory& t);

} // namespace theonlab
