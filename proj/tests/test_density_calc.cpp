#include <doctest.h>

#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "theonlab/catalog.hpp"
#include "theonlab/density_calc.hpp"

using namespace theonlab;

namespace {

// a 2-tournament as a model of the sign-action theory: Even holds the
// oriented tuples, Odd their reversals
Model tournament_as_action_model(const Model& t, const Theory& action_theory) {
    Model m = Model::empty(action_theory.sig, t.n);
    for (const auto& tup : t.rels[0]) {
        m.rels[0].push_back(tup);
        m.rels[1].push_back({tup[1], tup[0]});
    }
    m.normalize();
    return m;
}

} // namespace

TEST_CASE("action tables validate the group laws") {
    CHECK_NOTHROW(ActionTable::sign(2).validate());
    CHECK_NOTHROW(ActionTable::sign(3).validate());
    CHECK_NOTHROW(ActionTable::trivial(2, {"A", "B", "C"}).validate());

    ActionTable broken = ActionTable::sign(2);
    broken.action[0] = {1, 0}; // identity no longer acts trivially
    CHECK_THROWS_WITH_AS(broken.validate(), doctest::Contains("identity"), std::invalid_argument);

    ActionTable bad = ActionTable::sign(3);
    bad.action[3] = {1, 0}; // an even permutation acting as the odd ones
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("composition"), std::invalid_argument);
}

TEST_CASE("action table JSON round-trip") {
    ActionTable at = ActionTable::sign(3);
    ActionTable back = ActionTable::from_json(at.to_json());
    CHECK(back.predicates == at.predicates);
    CHECK(back.action == at.action);
}

TEST_CASE("probability validation") {
    ActionTable at = ActionTable::sign(2);
    CHECK_NOTHROW(at.validate_probabilities({Rat(1, 2), Rat(1, 2)}));
    CHECK_THROWS_WITH_AS(at.validate_probabilities({Rat(1, 3), Rat(2, 3)}), doctest::Contains("invariant"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(at.validate_probabilities({Rat(1, 2), Rat(1, 3)}), doctest::Contains("sum"),
                         std::invalid_argument);
    ActionTable triv = ActionTable::trivial(2, {"A", "B"});
    CHECK_THROWS_WITH_AS(triv.validate_probabilities({Rat(0), Rat(1)}), doctest::Contains("positive"),
                         std::invalid_argument);
}

TEST_CASE("closed-form quasirandom densities") {
    ActionTable sign2 = ActionTable::sign(2);
    const std::vector<Rat> half{Rat(1, 2), Rat(1, 2)};
    const Theory action_theory = theory_of_action(sign2);

    // every labeled 3-tournament has density 1/8 = (1/2)^{6/2}
    for (const auto& t : enumerate_tournaments(2, 3)) {
        Model m = tournament_as_action_model(t, action_theory);
        CHECK(closed_form_qr_density(sign2, half, m) == Rat(1, 8));
    }

    // trivial action with 2 colors read as a graph: (3/10)^2 (7/10)^4
    ActionTable colors = ActionTable::trivial(2, {"In", "Out"});
    const std::vector<Rat> p{Rat(3, 10), Rat(7, 10)};
    const Theory ct = theory_of_action(colors);
    Model g = Model::empty(ct.sig, 4);
    auto put = [&](int pred, int a, int b) {
        g.rels[pred].push_back({a, b});
        g.rels[pred].push_back({b, a});
    };
    put(0, 1, 2);
    put(0, 3, 4);
    put(1, 1, 3);
    put(1, 1, 4);
    put(1, 2, 3);
    put(1, 2, 4);
    g.normalize();
    CHECK(closed_form_qr_density(colors, p, g) == Rat(9, 100) * Rat(2401, 10000));

    // a single vertex has density 1 (empty product)
    Model v = Model::empty(ct.sig, 1);
    CHECK(closed_form_qr_density(colors, p, v) == Rat(1));
}

TEST_CASE("closed-form densities sum to 1 over labeled models") {
    ActionTable sign2 = ActionTable::sign(2);
    const std::vector<Rat> half{Rat(1, 2), Rat(1, 2)};
    const Theory action_theory = theory_of_action(sign2);
    for (int n : {3, 4}) {
        Rat total(0);
        for (const auto& t : enumerate_tournaments(2, n))
            total += closed_form_qr_density(sign2, half, tournament_as_action_model(t, action_theory));
        CHECK(total == Rat(1));
    }
}

TEST_CASE("closed form agrees with theon sampling") {
    // sign action k=2 vs the qr-tournamon theon
    ActionTable sign2 = ActionTable::sign(2);
    const std::vector<Rat> half{Rat(1, 2), Rat(1, 2)};
    const Theory action_theory = theory_of_action(sign2);
    Theon t = qr_tournamon(2);
    for (const auto& host : enumerate_tournaments(2, 4)) {
        if (host.rels[0].size() != 6) continue; // spot-check a few labeled models
        Rat exact = closed_form_qr_density(sign2, half, tournament_as_action_model(host, action_theory));
        auto [lab, unl] = estimate_density(t, host, 100000, 41, 2);
        CHECK(std::abs(lab.value - rat_double(exact)) < 4 * lab.stderr_ + 1e-9);
        break;
    }

    // the general theta-qr theon built from the sign table matches too
    Theon dispatch = theta_qr_theon(sign2, half);
    Model even_pair = Model::empty(dispatch.theory.sig, 2);
    even_pair.add(0, {1, 2});
    even_pair.add(1, {2, 1});
    auto [lab, unl] = estimate_density(dispatch, even_pair, 100000, 43, 1);
    CHECK(std::abs(lab.value - 0.5) < 4 * lab.stderr_);

    // trivial-action colored hypergraphon: closed form vs sampling
    ActionTable colors = ActionTable::trivial(2, {"E1", "E2"});
    const std::vector<Rat> p{Rat(3, 10), Rat(7, 10)};
    Theon ch = qr_colored_hypergraphon(2, p);
    Model m = Model::empty(ch.theory.sig, 3);
    m.add(0, {1, 2});
    m.add(0, {2, 1});
    m.add(1, {1, 3});
    m.add(1, {3, 1});
    m.add(1, {2, 3});
    m.add(1, {3, 2});
    Rat exact = closed_form_qr_density(colors, p, m);
    CHECK(exact == Rat(3, 10) * Rat(49, 100));
    auto [clab, cunl] = estimate_density(ch, m, 100000, 47, 1);
    CHECK(std::abs(clab.value - rat_double(exact)) < 4 * clab.stderr_);
}

TEST_CASE("product density of factor oracles") {
    Theon coupled = independent_coupling({qr_tournamon(2), linear_order_theon()});
    std::vector<Interpretation> erasures{coupling_erasing_interpretation(coupled, 0),
                                         coupling_erasing_interpretation(coupled, 1)};
    ActionTable sign2 = ActionTable::sign(2);
    const std::vector<Rat> half{Rat(1, 2), Rat(1, 2)};
    const Theory action_theory = theory_of_action(sign2);
    std::vector<DensityOracle> oracles;
    oracles.push_back([&](const Model& m) {
        return closed_form_qr_density(sign2, half, tournament_as_action_model(m, action_theory));
    });
    oracles.push_back([](const Model& m) -> Rat { return labeled_weight(m) * induced_density(m, m); }); // 1/n! for an order

    Model m = Model::empty(coupled.theory.sig, 3);
    m.add(0, {1, 2});
    m.add(0, {2, 3});
    m.add(0, {3, 1});
    m.add(1, {1, 2});
    m.add(1, {1, 3});
    m.add(1, {2, 3});
    CHECK(product_density(oracles, erasures, m) == Rat(1, 8) * Rat(1, 6));

    // single factor and zero factor
    Theon single = independent_coupling({qr_tournamon(2)});
    std::vector<Interpretation> one{coupling_erasing_interpretation(single, 0)};
    std::vector<DensityOracle> zero_oracle{[](const Model&) { return Rat(0); }};
    Model tm = Model::empty(single.theory.sig, 3);
    tm.add(0, {1, 2});
    tm.add(0, {2, 3});
    tm.add(0, {3, 1});
    CHECK(product_density(zero_oracle, one, tm) == Rat(0));
    std::vector<DensityOracle> tourn_oracle{oracles[0]};
    CHECK(product_density(tourn_oracle, one, tm) == Rat(1, 8));
}

TEST_CASE("dilution and its Moebius inverse") {
    Model base2 = Model::empty(theory_graph().sig, 2);
    DensityVector v = DensityVector::zero(base2, 2); // single pair, overlays {}, {12}
    v.xi[0] = Rat(1, 3);
    v.xi[1] = Rat(1, 5);
    const Rat t(2, 5);

    DensityVector d = dilute(v, t);
    // direct expansion: (xi_empty + (1-t) xi_pair, t xi_pair)
    CHECK(d.xi[0] == v.xi[0] + (Rat(1) - t) * v.xi[1]);
    CHECK(d.xi[1] == t * v.xi[1]);

    // t=1 is the identity
    DensityVector same = dilute(v, Rat(1));
    CHECK(same.xi == v.xi);
    CHECK(mobius_inverse(v, Rat(1)).xi == v.xi);

    // mass preservation over all overlays
    Model base3 = Model::empty(theory_graph().sig, 3);
    DensityVector w = DensityVector::zero(base3, 2); // 3 pairs, 8 overlays
    Rng rng(51);
    Rat total_in(0);
    for (auto& [u, val] : w.xi) {
        val = rat((long)(rng.u64() % 100), 100);
        total_in += val;
    }
    DensityVector dw = dilute(w, t);
    Rat total_out(0);
    for (const auto& [u, val] : dw.xi) total_out += val;
    CHECK(total_in == total_out);

    // the full-family term of the inverse is t^{-|U|} zeta(U)
    DensityVector inv = mobius_inverse(w, t);
    const std::uint64_t full = (1ULL << w.family_size()) - 1;
    CHECK(inv.xi[full] == pow_rat(Rat(1) / t, (unsigned long)w.family_size()) * w.xi[full]);
}

TEST_CASE("mobius_inverse(dilute(v,t),t) is the identity on 100 random vectors") {
    Model base3 = Model::empty(theory_graph().sig, 3);
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        DensityVector v = DensityVector::zero(base3, 2);
        for (auto& [u, val] : v.xi) val = rat((long)(rng.u64() % 1000), (long)(1 + rng.u64() % 1000));
        const Rat t = rat(1 + (long)(rng.u64() % 9), 10);
        DensityVector back = mobius_inverse(dilute(v, t), t);
        CHECK(back.xi == v.xi);
        DensityVector forth = dilute(mobius_inverse(v, t), t);
        CHECK(forth.xi == v.xi);
    }
}

TEST_CASE("density vector serialization") {
    Model base = Model::empty(theory_graph().sig, 2);
    DensityVector v = DensityVector::zero(base, 2);
    v.xi[1] = Rat(3, 7);
    nlohmann::json j = density_vector_to_json(v);
    CHECK(j["ell"] == 2);
    CHECK(j["overlays"]["1"]["value"] == "3/7");
}

TEST_CASE("delta1 evaluation") {
    Theon base = qr_hypergraphon(2, 0.5);
    DensityEstimate diag = delta1_eval(diagonal_self_coupling(base), 50000, 59, 1);
    CHECK(diag.value == 0.0);
    CHECK(diag.stderr_ == 0.0);

    DensityEstimate indep = delta1_eval(independent_self_coupling(base), 100000, 59, 2);
    CHECK(std::abs(indep.value - 0.5) < 4 * indep.stderr_ + 1e-9);

    // graphon(p) x graphon(q): symmetric difference p(1-q) + q(1-p)
    Theon pq = independent_coupling({qr_hypergraphon(2, 0.3), qr_hypergraphon(2, 0.7)}, {"_1", "_2"});
    DensityEstimate mix = delta1_eval(pq, 100000, 61, 1);
    const double expect = 0.3 * 0.3 + 0.7 * 0.7;
    CHECK(std::abs(mix.value - expect) < 4 * mix.stderr_ + 1e-9);
}
