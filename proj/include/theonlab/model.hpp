#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "theonlab/rational.hpp"

namespace theonlab {

using Vertex = int; // 1-based
using Tuple = std::vector<Vertex>;
using Perm = std::vector<Vertex>; // perm[v-1] = image of v

struct PredicateSymbol {
    std::string name;
    int arity = 0;
    bool operator==(const PredicateSymbol&) const = default;
};

struct Signature {
    std::vector<PredicateSymbol> preds;

    int index_of(const std::string& name) const;
    int max_arity() const;
    void validate() const; // unique names, arities >= 1
    bool operator==(const Signature&) const = default;
};

// Finite relational structure on vertices 1..n; every tuple has pairwise
// distinct entries (canonicity is structural, not checked per use).
struct Model {
    int n = 0;
    Signature sig;
    std::vector<std::vector<Tuple>> rels; // rels[p]: sorted, unique

    static Model empty(const Signature& sig, int n);

    bool has(int pred, const Tuple& t) const;
    void add(int pred, Tuple t); // keeps rels sorted; rejects non-injective tuples and out-of-range vertices
    void normalize();            // sort + dedupe all relations

    bool same_relations(const Model& other) const { return rels == other.rels; }
    bool operator==(const Model&) const = default;
};

struct IsoClass {
    Model rep;          // lexicographic-minimum relabeling
    std::uint64_t aut = 1;
};

Model relabel(const Model& m, const Perm& perm);
Model induced_submodel(const Model& host, const std::vector<Vertex>& verts); // verts sorted ascending -> model on [k]

// Exhaustive-search canonical form (desk scale: n <= ~8).
Model canonical_form(const Model& m);
std::uint64_t automorphism_count(const Model& m);
Rat labeled_weight(const Model& m); // |Aut(m)| / n!

std::optional<Perm> isomorphic(const Model& a, const Model& b);

// Fraction of |m|-subsets of host inducing a copy of m; exact.
Rat induced_density(const Model& m, const Model& host);

struct Theory; // theory.hpp

struct EnumerationBudgetError : std::runtime_error {
    double search_space;
    explicit EnumerationBudgetError(double space);
};

// All models of `t` on n vertices up to isomorphism, canonical reps in
// deterministic order (sorted by canonical form bytes). Throws
// EnumerationBudgetError when the raw relation-assignment space exceeds
// `budget`.
std::vector<IsoClass> enumerate_models(const Theory& t, int n, double budget = double(1ULL << 30));

// Labeled k-tournaments on [n], one per orientation pattern (2^C(n,k) of
// them); bypasses the generic assignment search.
std::vector<Model> enumerate_tournaments(int k, int n);

// Text format: line `n=<int>`, then one `P: (a,b);(c,d)` line per predicate
// (1-based vertices, tuples sorted). Round-trips bit-exactly.
std::string serialize_model(const Model& m);
Model parse_model(const std::string& text, const Signature& sig);

std::string relation_bytes(const Model& m); // relations only, for canonical-order ties

} // namespace theonlab
