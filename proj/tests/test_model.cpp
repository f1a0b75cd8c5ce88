#include <doctest.h>

#include <numeric>
#include <set>

#include "theonlab/model.hpp"
#include "theonlab/rng.hpp"
#include "theonlab/theory.hpp"

using namespace theonlab;

namespace {

Model graph_on(int n, const std::vector<std::pair<int, int>>& edges) {
    Model m = Model::empty(theory_graph().sig, n);
    for (auto [a, b] : edges) {
        m.add(0, {a, b});
        m.add(0, {b, a});
    }
    return m;
}

Model digraph_on(int n, const std::vector<std::pair<int, int>>& arcs) {
    Model m = Model::empty(Signature{{{"E", 2}}}, n);
    for (auto [a, b] : arcs) m.add(0, {a, b});
    return m;
}

} // namespace

TEST_CASE("isomorphism witnesses") {
    Model c3 = graph_on(3, {{1, 2}, {2, 3}, {3, 1}});
    Model p3 = graph_on(3, {{1, 2}, {2, 3}});
    CHECK_FALSE(isomorphic(c3, p3).has_value());

    Model cyc = digraph_on(3, {{1, 2}, {2, 3}, {3, 1}});
    Model rev = digraph_on(3, {{2, 1}, {3, 2}, {1, 3}});
    auto w = isomorphic(cyc, rev);
    REQUIRE(w.has_value());
    CHECK(relabel(cyc, *w).rels == rev.rels);

    auto self = isomorphic(c3, c3);
    REQUIRE(self.has_value());
    CHECK(relabel(c3, *self).rels == c3.rels);
}

TEST_CASE("automorphism counts and labeled weights") {
    Model k3 = graph_on(3, {{1, 2}, {2, 3}, {3, 1}});
    CHECK(automorphism_count(k3) == 6);
    CHECK(labeled_weight(k3) == Rat(1));

    Model cyc = digraph_on(3, {{1, 2}, {2, 3}, {3, 1}});
    CHECK(automorphism_count(cyc) == 3);
    CHECK(labeled_weight(cyc) == Rat(1, 2));

    Model p3 = graph_on(3, {{1, 2}, {2, 3}});
    CHECK(automorphism_count(p3) == 2);

    Model arc = digraph_on(2, {{1, 2}});
    CHECK(automorphism_count(arc) == 1);
    CHECK(labeled_weight(arc) == Rat(1, 2));
}

TEST_CASE("enumerate_models counts") {
    CHECK(enumerate_models(theory_graph(), 3).size() == 4);
    CHECK(enumerate_models(theory_graph(), 4).size() == 11);
    CHECK(enumerate_models(theory_linear_order(), 3).size() == 1);
    CHECK(enumerate_models(theory_tournament(2), 3).size() == 2);
    CHECK(enumerate_models(theory_tournament(2), 4).size() == 4);
}

TEST_CASE("enumeration budget guard") {
    CHECK_THROWS_AS(enumerate_models(theory_hypergraph(3), 5, 1 << 20), EnumerationBudgetError);
}

TEST_CASE("tournament pattern enumerator agrees with the generic path") {
    auto labeled = enumerate_tournaments(2, 3);
    CHECK(labeled.size() == 8);
    const Theory t = theory_tournament(2);
    std::set<std::vector<std::vector<Tuple>>> canon;
    for (const auto& m : labeled) {
        CHECK(models(t, m));
        canon.insert(canonical_form(m).rels);
    }
    CHECK(canon.size() == 2);
}

TEST_CASE("induced densities") {
    Model edge = graph_on(2, {{1, 2}});
    Model k3 = graph_on(3, {{1, 2}, {2, 3}, {3, 1}});
    Model p3 = graph_on(3, {{1, 2}, {2, 3}});
    CHECK(induced_density(edge, k3) == Rat(1));
    CHECK(induced_density(edge, p3) == Rat(2, 3));
    CHECK(induced_density(k3, edge) == Rat(0));
}

TEST_CASE("density of all n-classes sums to 1 on any host") {
    Rng rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        Model host = Model::empty(theory_graph().sig, 5);
        for (int a = 1; a <= 5; ++a)
            for (int b = a + 1; b <= 5; ++b)
                if (rng.unit() < 0.5) {
                    host.add(0, {a, b});
                    host.add(0, {b, a});
                }
        Rat total(0);
        for (const auto& cls : enumerate_models(theory_graph(), 3)) total += induced_density(cls.rep, host);
        CHECK(total == Rat(1));
    }
}

TEST_CASE("aut count times labeled copy count is n!") {
    for (const auto& cls : enumerate_models(theory_graph(), 4)) {
        std::set<std::vector<std::vector<Tuple>>> labeled;
        Perm perm(4);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            labeled.insert(relabel(cls.rep, perm).rels);
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(cls.aut * labeled.size() == 24);
    }
}

TEST_CASE("canonical form equality characterizes isomorphism") {
    auto classes = enumerate_models(theory_graph(), 4);
    for (const auto& a : classes)
        for (const auto& b : classes) {
            const bool iso = isomorphic(a.rep, b.rep).has_value();
            CHECK(iso == (canonical_form(a.rep).rels == canonical_form(b.rep).rels));
        }
}

TEST_CASE("model file format round-trips bit-exactly") {
    Model cyc = digraph_on(3, {{1, 2}, {2, 3}, {3, 1}});
    std::string text = serialize_model(cyc);
    CHECK(text == "n=3\nE: (1,2);(2,3);(3,1)\n");
    Model back = parse_model(text, cyc.sig);
    CHECK(back == cyc);
    CHECK(serialize_model(back) == text);

    Model empty = Model::empty(theory_graph().sig, 2);
    CHECK(serialize_model(empty) == "n=2\nE:\n");
    CHECK(parse_model("n=2\nE:\n", empty.sig) == empty);
}

TEST_CASE("model parser reports errors") {
    const Signature sig = theory_graph().sig;
    CHECK_THROWS_WITH_AS(parse_model("m=3\n", sig), doctest::Contains("line 1"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_model("n=3\nF: (1,2)\n", sig), doctest::Contains("unknown predicate"),
                         std::invalid_argument);
    CHECK_THROWS_AS(parse_model("n=3\nE: (1,1)\n", sig), std::invalid_argument);
    CHECK_THROWS_AS(parse_model("n=2\nE: (1,5)\n", sig), std::invalid_argument);
}
