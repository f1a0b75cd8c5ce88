#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "theonlab/estimation.hpp"
#include "theonlab/rational.hpp"
#include "theonlab/theon.hpp"

namespace theonlab {

// Left S_k-action on a language of arity-k predicates. Permutations are
// stored in lexicographic order over one-line notation; action laws
// (identity, composition) are verified at construction.
struct ActionTable {
    int k = 1;
    std::vector<std::string> predicates;
    std::vector<Perm> perms;             // all k!, lex order
    std::vector<std::vector<int>> action; // action[perm][pred] -> pred

    static ActionTable trivial(int k, std::vector<std::string> predicates);
    static ActionTable sign(int k); // {Even, Odd} swapped by odd permutations

    void validate() const;
    int perm_index(const Perm& p) const;
    int act(int perm, int pred) const { return action[perm][pred]; }
    // orbits share one probability, so p must be constant on them
    void validate_probabilities(const std::vector<Rat>& p) const;

    nlohmann::json to_json() const;
    static ActionTable from_json(const nlohmann::json& j);
};

// T_Theta axioms: exactly-one on distinct tuples, equivariance under
// adjacent transpositions, pairwise exclusion.
Theory theory_of_action(const ActionTable& at);

// Labeled density of m under psi_{Theta,p}: product over k-subsets A of the
// probability attached to the predicate holding the increasing enumeration
// of A. Exponents stay integral per k-set by construction.
Rat closed_form_qr_density(const ActionTable& at, const std::vector<Rat>& p, const Model& m);

// Theon representation of psi_{Theta,p} via an interval partition of the top
// coordinate dispatched on sigma_x.
Theon theta_qr_theon(const ActionTable& at, const std::vector<Rat>& p, std::string name = "");

// Syntactic independent coupling: product of the factor oracles on reducts.
using DensityOracle = std::function<Rat(const Model&)>;
Rat product_density(const std::vector<DensityOracle>& factors, const std::vector<Interpretation>& erasures,
                    const Model& coupled);

// xi(<M_U>) for every overlay U of ell-subsets of a fixed base model.
struct DensityVector {
    Model base;
    int ell = 2;
    std::vector<std::uint32_t> family; // all ell-subsets of [|base|] as masks, ascending
    std::map<std::uint64_t, Rat> xi;   // overlay (bitmask over family index) -> value

    static DensityVector zero(Model base, int ell);
    int family_size() const { return (int)family.size(); }
};

// F(xi)(<M_U>) = t^{|U|} sum_{W >= U} (1-t)^{|W\U|} xi(<M_W>)
DensityVector dilute(const DensityVector& v, const Rat& t);
// exact left inverse: t^{-|U|} sum_{W >= U} (1-1/t)^{|W\U|} zeta(<M_W>)
DensityVector mobius_inverse(const DensityVector& v, const Rat& t);

nlohmann::json density_vector_to_json(const DensityVector& v);

// MC estimate of xi(d_T) for a coupling of two copies of the same signature:
// sum over P of P[(1..k) lies in exactly one copy]. Upper bound on delta_1.
DensityEstimate delta1_eval(const Theon& coupled, std::uint64_t n_samples, std::uint64_t seed, int threads = 1);

} // namespace theonlab
