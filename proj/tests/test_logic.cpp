#include <doctest.h>

#include <numeric>

#include "theonlab/interpretation.hpp"
#include "theonlab/rng.hpp"
#include "theonlab/theory.hpp"

using namespace theonlab;

namespace {

Model digraph_on(int n, const std::vector<std::pair<int, int>>& arcs) {
    Model m = Model::empty(Signature{{{"E", 2}}}, n);
    for (auto [a, b] : arcs) m.add(0, {a, b});
    return m;
}

} // namespace

TEST_CASE("parser builds the expected ASTs") {
    const Signature g = theory_graph().sig;
    Formula f = parse_formula("E(x1,x2) & !E(x2,x3)", g, 3);
    CHECK(f.kind == Formula::Kind::And);
    REQUIRE(f.kids.size() == 2);
    CHECK(f.kids[0].kind == Formula::Kind::Atom);
    CHECK(f.kids[1].kind == Formula::Kind::Not);

    Formula eq = parse_formula("x1=x2 | E(x1,x2)", g, 2);
    CHECK(eq.kind == Formula::Kind::Or);
    CHECK(eq.kids[0].kind == Formula::Kind::Eq);

    // <-> desugars to (a & b) | (!a & !b)
    Formula iff = parse_formula("E(x1,x2) <-> E(x1,x3)", g, 3);
    Formula manual = parse_formula("(E(x1,x2) & E(x1,x3)) | (!E(x1,x2) & !E(x1,x3))", g, 3);
    CHECK(iff == manual);

    // -> desugars to !a | b, right associative
    CHECK(parse_formula("E(x1,x2) -> E(x2,x3)", g, 3) == parse_formula("!E(x1,x2) | E(x2,x3)", g, 3));
}

TEST_CASE("parse-print-parse is idempotent") {
    const Signature g = theory_graph().sig;
    for (const char* src : {"E(x1,x2) & !E(x2,x3)", "x1=x2 | E(x1,x2)", "E(x1,x2) <-> E(x1,x3)",
                            "!(E(x1,x2) | E(x2,x3)) & x1=x3", "E(x1,x2) -> E(x2,x3) -> E(x1,x3)"}) {
        Formula f = parse_formula(src, g, 3);
        std::string printed = print_formula(f, g);
        Formula again = parse_formula(printed, g, 3);
        CHECK(print_formula(again, g) == printed);
        CHECK(again == f);
    }
}

TEST_CASE("parser rejects bad input with positions") {
    const Signature g = theory_graph().sig;
    CHECK_THROWS_WITH_AS(parse_formula("E(x1,x2", g, 2), doctest::Contains("position"), ParseError);
    CHECK_THROWS_WITH_AS(parse_formula("F(x1,x2)", g, 2), doctest::Contains("unknown predicate"), ParseError);
    CHECK_THROWS_WITH_AS(parse_formula("E(x1)", g, 2), doctest::Contains("arity"), ParseError);
    CHECK_THROWS_WITH_AS(parse_formula("E(x1,x5)", g, 2), doctest::Contains("out of range"), ParseError);
    CHECK_THROWS_WITH_AS(parse_formula("forall x1, E(x1,x2)", g, 2), doctest::Contains("quantifiers"), ParseError);
}

TEST_CASE("evaluation follows canonicity") {
    const Signature g = theory_graph().sig;
    Model k3 = digraph_on(3, {{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}});
    CHECK(eval_formula(parse_formula("E(x1,x2)", g, 2), k3, {1, 2}));
    CHECK_FALSE(eval_formula(parse_formula("E(x1,x1)", g, 1), k3, {2}));
    // equality on a repeated assignment
    CHECK(eval_formula(parse_formula("x1=x2", g, 2), k3, {2, 2}));
}

TEST_CASE("alternation equivalence formula on 3-tournaments") {
    // OR over i of P(x_i, x_j1) <-> P(x_i, x_j2): false exactly on cyclic triples
    Interpretation alt = alternation_interpretation(1);
    Model cyc = digraph_on(3, {{1, 2}, {2, 3}, {3, 1}});
    CHECK_FALSE(eval_formula(alt.formulas[0], cyc, {1, 2, 3}));

    Model trans = digraph_on(3, {{1, 2}, {1, 3}, {2, 3}});
    CHECK(eval_formula(alt.formulas[0], trans, {1, 2, 3}));

    // model-level: cyclic -> empty 3-edge set, transitive -> full
    CHECK(apply_interpretation(alt, cyc).rels[0].empty());
    CHECK(apply_interpretation(alt, trans).rels[0].size() == 6);
}

TEST_CASE("alternating-copies interpretation equals its open-diagram form") {
    Interpretation fast = alternating_copies_interpretation(1);
    Interpretation diagram = alternating_copies_diagram_interpretation(1);
    for (const auto& t : enumerate_tournaments(2, 3))
        CHECK(apply_interpretation(fast, t).rels == apply_interpretation(diagram, t).rels);
    for (const auto& t : enumerate_tournaments(2, 4))
        CHECK(apply_interpretation(fast, t).rels == apply_interpretation(diagram, t).rels);
}

TEST_CASE("check_axioms finds violations") {
    const Theory tt = theory_tournament(2);
    Model cyc = digraph_on(3, {{1, 2}, {2, 3}, {3, 1}});
    CHECK(check_axioms(tt, cyc).empty());

    Model both = digraph_on(2, {{1, 2}, {2, 1}});
    auto v = check_axioms(tt, both);
    CHECK_FALSE(v.empty());

    const Theory lo = theory_linear_order();
    Model cyc_order = Model::empty(lo.sig, 3);
    cyc_order.add(0, {1, 2});
    cyc_order.add(0, {2, 3});
    cyc_order.add(0, {3, 1});
    auto violations = check_axioms(lo, cyc_order);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations.front().axiom == 1); // transitivity
}

TEST_CASE("check_interpretation bounded verification") {
    auto arc = arc_orientation_interpretation(1);
    auto rep = check_interpretation(arc, arc.source, arc.target, 4);
    CHECK(rep.ok);
    CHECK(rep.models_checked > 0);

    auto id = identity_interpretation(theory_graph());
    CHECK(check_interpretation(id, id.source, id.target, 4).ok);

    // mapping the tournament predicate to a tautology on distinct pairs
    Interpretation bad;
    bad.name = "bad";
    bad.source = theory_tournament(2);
    bad.target = theory_graph();
    bad.formulas.push_back(parse_formula("!(x1=x2)", theory_graph().sig, 2));
    auto bad_rep = check_interpretation(bad, bad.source, bad.target, 2);
    CHECK_FALSE(bad_rep.ok);
    CHECK(bad_rep.counterexample.has_value());
}

TEST_CASE("union and composition of interpretations") {
    auto id_graph = identity_interpretation(theory_graph());
    auto id_order = identity_interpretation(theory_linear_order());
    auto both = union_interpretation(id_graph, id_order);
    const Theory go = union_theory(theory_graph(), theory_linear_order());
    for (const auto& cls : enumerate_models(go, 3))
        CHECK(apply_interpretation(both, cls.rep).rels == cls.rep.rels);

    // compose(alternation, arc-orientation): graph+order -> transitive triples
    auto alt = alternation_interpretation(1);
    auto arc = arc_orientation_interpretation(1);
    auto composed = compose_interpretation(alt, arc);
    for (const auto& cls : enumerate_models(go, 3)) {
        Model two_step = apply_interpretation(alt, apply_interpretation(arc, cls.rep));
        CHECK(apply_interpretation(composed, cls.rep).rels == two_step.rels);
    }
}

TEST_CASE("composition law holds on all models up to n=4") {
    auto comp = complement_interpretation(2);
    auto twice = compose_interpretation(comp, comp);
    for (int n = 1; n <= 4; ++n)
        for (const auto& cls : enumerate_models(theory_graph(), n)) {
            CHECK(apply_interpretation(twice, cls.rep).rels == cls.rep.rels);
            CHECK(apply_interpretation(comp, apply_interpretation(comp, cls.rep)).rels ==
                  apply_interpretation(twice, cls.rep).rels);
        }
}

TEST_CASE("interpretations commute with isomorphism") {
    auto alt = alternation_interpretation(1);
    Rng rng(17);
    for (const auto& host : enumerate_tournaments(2, 4)) {
        Perm perm = {1, 2, 3, 4};
        for (int i = 3; i > 0; --i) std::swap(perm[i], perm[rng.u64() % (i + 1)]);
        CHECK(apply_interpretation(alt, relabel(host, perm)).rels == relabel(apply_interpretation(alt, host), perm).rels);
    }
}

TEST_CASE("interpretation files round-trip") {
    auto alt = alternation_interpretation(1);
    std::string text = serialize_interpretation(alt);
    Interpretation back = parse_interpretation(text, alt.source, alt.target);
    Model cyc = digraph_on(3, {{1, 2}, {2, 3}, {3, 1}});
    CHECK(apply_interpretation(back, cyc).rels == apply_interpretation(alt, cyc).rels);
    CHECK_THROWS_WITH_AS(parse_interpretation("E(x1,x2,x3) := Q(x1)\n", alt.source, alt.target),
                         doctest::Contains("unknown predicate"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_interpretation("", alt.source, alt.target), doctest::Contains("not mapped"),
                         std::invalid_argument);
}
