#include "theonlab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace theonlab {

Formula Formula::constant(bool v) {
    Formula f;
    f.kind = Kind::Const;
    f.value = v;
    return f;
}

Formula Formula::atom(int pred, std::vector<int> vars) {
    Formula f;
    f.kind = Kind::Atom;
    f.pred = pred;
    f.vars = std::move(vars);
    return f;
}

Formula Formula::eq(int a, int b) {
    Formula f;
    f.kind = Kind::Eq;
    f.vars = {a, b};
    return f;
}

Formula Formula::negation(Formula g) {
    Formula f;
    f.kind = Kind::Not;
    f.kids.push_back(std::move(g));
    return f;
}

Formula Formula::conj(std::vector<Formula> kids) {
    if (kids.empty()) return constant(true);
    if (kids.size() == 1) return std::move(kids[0]);
    Formula f;
    f.kind = Kind::And;
    f.kids = std::move(kids);
    return f;
}

Formula Formula::disj(std::vector<Formula> kids) {
    if (kids.empty()) return constant(false);
    if (kids.size() == 1) return std::move(kids[0]);
    Formula f;
    f.kind = Kind::Or;
    f.kids = std::move(kids);
    return f;
}

int Formula::max_var() const {
    int m = 0;
    for (int v : vars) m = std::max(m, v);
    for (const auto& k : kids) m = std::max(m, k.max_var());
    return m;
}

ParseError::ParseError(const std::string& msg, size_t p)
    : std::invalid_argument(msg + " (at position " + std::to_string(p + 1) + ")"), pos(p) {}

namespace {

struct Parser {
    const std::string& s;
    const Signature& sig;
    int nvars;
    size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }

    bool eat(const char* tok) {
        ws();
        size_t len = std::strlen(tok);
        if (s.compare(i, len, tok) == 0) {
            i += len;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

    int variable() {
        ws();
        if (i >= s.size() || s[i] != 'x') fail("expected variable 'xN'");
        size_t j = i + 1, start = j;
        while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
        if (j == start) fail("expected variable index after 'x'");
        int v = std::stoi(s.substr(start, j - start));
        if (v < 1 || v > nvars) fail("variable x" + std::to_string(v) + " out of range (declared " + std::to_string(nvars) + ")");
        i = j;
        return v;
    }

    Formula primary() {
        ws();
        if (i >= s.size()) fail("unexpected end of formula");
        if (eat("(")) {
            Formula f = iff();
            if (!eat(")")) fail("expected ')'");
            return f;
        }
        if (eat("!")) return Formula::negation(primary());
        char c = s[i];
        if (c == 'x' && i + 1 < s.size() && std::isdigit((unsigned char)s[i + 1])) {
            int a = variable();
            if (!eat("=")) fail("expected '=' after variable");
            int b = variable();
            return Formula::eq(a, b);
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = i;
            while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_')) ++i;
            std::string name = s.substr(start, i - start);
            if (name == "forall" || name == "exists") {
                i = start;
                fail("quantifiers are not allowed in open formulas");
            }
            int p = sig.index_of(name);
            if (p < 0) {
                i = start;
                fail("unknown predicate '" + name + "'");
            }
            if (!eat("(")) fail("expected '(' after predicate name");
            std::vector<int> args;
            args.push_back(variable());
            while (eat(",")) args.push_back(variable());
            if (!eat(")")) fail("expected ')'");
            if ((int)args.size() != sig.preds[p].arity) {
                i = start;
                fail("arity mismatch: " + name + " expects " + std::to_string(sig.preds[p].arity) + " arguments, got " + std::to_string(args.size()));
            }
            return Formula::atom(p, std::move(args));
        }
        fail("expected atom, equality, '!' or '('");
    }

    Formula conjunction() {
        std::vector<Formula> kids;
        kids.push_back(primary());
        while (eat("&")) kids.push_back(primary());
        return Formula::conj(std::move(kids));
    }

    Formula disjunction() {
        std::vector<Formula> kids;
        kids.push_back(conjunction());
        while (eat("|")) kids.push_back(conjunction());
        return Formula::disj(std::move(kids));
    }

    Formula implication() {
        Formula lhs = disjunction();
        if (eat("->")) {
            Formula rhs = implication(); // right associative
            std::vector<Formula> kids;
            kids.push_back(Formula::negation(std::move(lhs)));
            kids.push_back(std::move(rhs));
            return Formula::disj(std::move(kids));
        }
        return lhs;
    }

    Formula iff() {
        Formula lhs = implication();
        while (true) {
            ws();
            // '->' was consumed inside implication(); here only '<->' can start with '<'
            if (!eat("<->")) return lhs;
            Formula rhs = implication();
            // a <-> b  =>  (a & b) | (!a & !b)
            std::vector<Formula> both, neither;
            both.push_back(lhs);
            both.push_back(rhs);
            neither.push_back(Formula::negation(lhs));
            neither.push_back(Formula::negation(rhs));
            std::vector<Formula> kids;
            kids.push_back(Formula::conj(std::move(both)));
            kids.push_back(Formula::conj(std::move(neither)));
            lhs = Formula::disj(std::move(kids));
        }
    }
};

int precedence(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::Or: return 1;
        case Formula::Kind::And: return 2;
        case Formula::Kind::Not: return 3;
        default: return 4;
    }
}

void print_rec(const Formula& f, const Signature& sig, std::ostringstream& os, int parent_prec) {
    const int prec = precedence(f.kind);
    const bool parens = prec < parent_prec;
    if (parens) os << "(";
    switch (f.kind) {
        case Formula::Kind::Const:
            // no literal in the grammar; emit a tautology/contradiction over x1
            os << (f.value ? "x1=x1" : "!(x1=x1)");
            break;
        case Formula::Kind::Atom:
            os << sig.preds[f.pred].name << "(";
            for (size_t i = 0; i < f.vars.size(); ++i) os << (i ? "," : "") << "x" << f.vars[i];
            os << ")";
            break;
        case Formula::Kind::Eq:
            os << "x" << f.vars[0] << "=x" << f.vars[1];
            break;
        case Formula::Kind::Not:
            os << "!";
            print_rec(f.kids[0], sig, os, 4);
            break;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            const char* sep = f.kind == Formula::Kind::And ? " & " : " | ";
            for (size_t i = 0; i < f.kids.size(); ++i) {
                if (i) os << sep;
                print_rec(f.kids[i], sig, os, prec + 1);
            }
            break;
        }
    }
    if (parens) os << ")";
}

} // namespace

Formula parse_formula(const std::string& text, const Signature& sig, int vars) {
    Parser p{text, sig, vars};
    Formula f = p.iff();
    p.ws();
    if (p.i != text.size()) throw ParseError("trailing input", p.i);
    return f;
}

std::string print_formula(const Formula& f, const Signature& sig) {
    std::ostringstream os;
    print_rec(f, sig, os, 0);
    return os.str();
}

bool eval_formula(const Formula& f, const Model& m, const std::vector<Vertex>& assignment) {
    switch (f.kind) {
        case Formula::Kind::Const:
            return f.value;
        case Formula::Kind::Atom: {
            Tuple t(f.vars.size());
            for (size_t i = 0; i < f.vars.size(); ++i) {
                t[i] = assignment[f.vars[i] - 1];
                for (size_t j = 0; j < i; ++j)
                    if (t[j] == t[i]) return false; // canonicity
            }
            return m.has(f.pred, t);
        }
        case Formula::Kind::Eq:
            return assignment[f.vars[0] - 1] == assignment[f.vars[1] - 1];
        case Formula::Kind::Not:
            return !eval_formula(f.kids[0], m, assignment);
        case Formula::Kind::And:
            for (const auto& k : f.kids)
                if (!eval_formula(k, m, assignment)) return false;
            return true;
        case Formula::Kind::Or:
            for (const auto& k : f.kids)
                if (eval_formula(k, m, assignment)) return true;
            return false;
    }
    return false;
}

} // namespace theonlab
