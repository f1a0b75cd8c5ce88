#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "theonlab/model.hpp"

namespace theonlab {

// Quantifier-free formula over a signature, variables x1..xN (1-based
// indices). `->` and `<->` are parser sugar, not node kinds.
struct Formula {
    enum class Kind { Const, Atom, Eq, Not, And, Or };

    Kind kind = Kind::Const;
    bool value = false;          // Const
    int pred = -1;               // Atom
    std::vector<int> vars;       // Atom args; Eq uses vars[0], vars[1]
    std::vector<Formula> kids;   // Not (1), And/Or (>=1)

    static Formula constant(bool v);
    static Formula atom(int pred, std::vector<int> vars);
    static Formula eq(int a, int b);
    static Formula negation(Formula f);
    static Formula conj(std::vector<Formula> kids); // empty -> true
    static Formula disj(std::vector<Formula> kids); // empty -> false

    int max_var() const;
    bool operator==(const Formula&) const = default;
};

struct ParseError : std::invalid_argument {
    size_t pos; // 0-based offset into the input
    ParseError(const std::string& msg, size_t pos);
};

// Grammar: atoms `NAME(xI,...)`, equality `xI=xJ`, `!`, `&`, `|`, `->`,
// `<->`, parentheses. Precedence ! > & > | > -> > <->. Quantifiers are
// rejected. Validates predicate names and arities against `sig` and variable
// indices against `vars`.
Formula parse_formula(const std::string& text, const Signature& sig, int vars);

std::string print_formula(const Formula& f, const Signature& sig);

// Truth under `assignment` (assignment[i-1] = vertex bound to xi). Atoms
// with repeated vertex entries evaluate false (canonicity).
bool eval_formula(const Formula& f, const Model& m, const std::vector<Vertex>& assignment);

} // namespace theonlab
