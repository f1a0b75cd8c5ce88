#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "theonlab/catalog.hpp"
#include "theonlab/estimation.hpp"
#include "theonlab/mc.hpp"

using namespace theonlab;

namespace {

Point point_e2(double x1, double x2, double x12, int dims = 1) {
    Point p(2, 2, dims);
    p.coord(0b01, 0) = x1;
    p.coord(0b10, 0) = x2;
    p.coord(0b11, 0) = x12;
    return p;
}

} // namespace

TEST_CASE("membership of the spec point examples") {
    // constant graphon threshold
    Theon g = qr_hypergraphon(2, 0.3);
    CHECK(eval_membership_id(g, 0, point_e2(0.9, 0.8, 0.2)));
    CHECK_FALSE(eval_membership_id(g, 0, point_e2(0.9, 0.8, 0.31)));

    // skew graphon: frac(0.5 + 0.6 + 0.3) = 0.4 >= 0.3
    Theon s = skew_graphon(0.3);
    CHECK_FALSE(eval_membership_id(s, 0, point_e2(0.5, 0.6, 0.3)));
    CHECK(eval_membership_id(s, 0, point_e2(0.5, 0.6, 0.1))); // frac(1.2) = 0.2 < 0.3

    // tournamon: x1=0.9 > x2=0.1 so sgn = -1; x12 = 0.3 < 1/2; equivalence fails
    Theon t = qr_tournamon(2);
    CHECK_FALSE(eval_membership_id(t, 0, point_e2(0.9, 0.1, 0.3)));
    CHECK(eval_membership_id(t, 0, point_e2(0.1, 0.9, 0.3)));
}

TEST_CASE("sample_theta is deterministic and uniform") {
    GroundSpace space{1};
    Point a = sample_theta(2, space, 2, 42);
    Point b = sample_theta(2, space, 2, 42);
    CHECK(a.vals == b.vals);
    CHECK(a.vals.size() == 3);

    Point c = sample_theta(2, space, 2, 43);
    CHECK(a.vals != c.vals);

    Rng rng(7);
    double sum = 0;
    const int N = 1000000;
    for (int i = 0; i < N; ++i) sum += rng.unit();
    CHECK(std::abs(sum / N - 0.5) < 0.002);
}

TEST_CASE("realized models satisfy the built-in axioms") {
    struct Case {
        Theon t;
        Theory theory;
    };
    std::vector<Case> cases;
    cases.push_back({linear_order_theon(), theory_linear_order()});
    cases.push_back({qr_tournamon(2), theory_tournament(2)});
    cases.push_back({qr_colored_hypergraphon(1, {parse_rat("3/10"), parse_rat("7/10")}),
                     theory_coloring(2)});
    for (auto& c : cases) {
        for (int trial = 0; trial < 200; ++trial) {
            Point theta = sample_theta(4, GroundSpace{c.t.dims}, c.t.max_arity(), split_seed(11, trial));
            Model m = realize_model(c.t, theta);
            CAPTURE(c.t.name);
            CHECK(check_axioms(c.theory, m).empty());
        }
    }
}

TEST_CASE("degenerate theons realize the expected models") {
    Theon full = qr_hypergraphon(2, 1.0);
    Model m = realize_model(full, sample_theta(4, GroundSpace{1}, 2, 3));
    CHECK(m.rels[0].size() == 12); // complete graph, all ordered pairs

    Theon zero = qr_hypergraphon(2, 0.0);
    Model e = realize_model(zero, sample_theta(4, GroundSpace{1}, 2, 3));
    CHECK(e.rels[0].empty());
}

TEST_CASE("exchangeability: permuted theta realizes the relabeled model") {
    Theon t = qr_tournamon(2);
    for (int trial = 0; trial < 50; ++trial) {
        Point theta = sample_theta(4, GroundSpace{1}, 2, split_seed(5, trial));
        Perm perm = {3, 1, 4, 2};
        Point permuted = permute_point(theta, perm);
        Model direct = realize_model(t, permuted);
        Model base = realize_model(t, theta);
        // alpha in R(direct) iff perm o alpha in R(base)
        Model expect = Model::empty(base.sig, 4);
        for (const auto& tup : base.rels[0]) {
            Perm inv(4);
            for (int i = 0; i < 4; ++i) inv[perm[i] - 1] = i + 1;
            Tuple u(tup.size());
            for (size_t i = 0; i < tup.size(); ++i) u[i] = inv[tup[i] - 1];
            expect.rels[0].push_back(u);
        }
        expect.normalize();
        CHECK(direct.rels == expect.rels);
    }
}

TEST_CASE("independent coupling of two orders: all four cells near 1/4") {
    Theon coupled = independent_coupling({linear_order_theon(), linear_order_theon()}, {"_1", "_2"});
    CHECK(coupled.dims == 2);
    Realizer r(coupled, 2);
    CellCounts cells = count_cells(r, 40000, 9, 1);
    CHECK(cells.size() == 4);
    for (const auto& [bits, count] : cells) CHECK(std::abs((double)count / 40000 - 0.25) < 0.02);
}

TEST_CASE("diagonal vs independent self-coupling of the graphon") {
    Theon base = qr_hypergraphon(2, 0.5);
    Theon diag = diagonal_self_coupling(base);
    Theon indep = independent_self_coupling(base);

    std::uint64_t both_diag = 0, both_indep = 0;
    const int N = 20000;
    Point pd(2, 2, diag.dims), pi(2, 2, indep.dims);
    Rng rd(21), ri(22);
    for (int i = 0; i < N; ++i) {
        sample_point_into(pd, rd);
        if (eval_membership_id(diag, 0, pd) && eval_membership_id(diag, 1, pd)) ++both_diag;
        sample_point_into(pi, ri);
        if (eval_membership_id(indep, 0, pi) && eval_membership_id(indep, 1, pi)) ++both_indep;
    }
    CHECK(std::abs((double)both_diag / N - 0.5) < 0.02);
    CHECK(std::abs((double)both_indep / N - 0.25) < 0.02);

    // the two reducts of a realized diagonal model are identical
    Point theta = sample_theta(3, GroundSpace{diag.dims}, 2, 77);
    Model m = realize_model(diag, theta);
    CHECK(m.rels[0] == m.rels[1]);
}

TEST_CASE("interpret-then-realize equals realize-then-apply on shared theta") {
    for (const auto& pair : registered_pairs()) {
        Theon image = interpret_theon(pair.interpretation, pair.theon);
        const int n = std::max(image.max_arity(), pair.theon.max_arity()) + 1;
        for (int trial = 0; trial < 300; ++trial) {
            Point theta = sample_theta(n, GroundSpace{pair.theon.dims}, pair.theon.max_arity(), split_seed(1234, trial));
            // the image theon may reference only lower-order coordinates, but
            // shares the same ground space
            Model via_theon = realize_model(image, theta);
            Model via_model = apply_interpretation(pair.interpretation, realize_model(pair.theon, theta));
            CAPTURE(pair.name);
            CHECK(via_theon.rels == via_model.rels);
        }
    }
}

TEST_CASE("estimate_density spec examples") {
    // any labeled 3-tournament has density 1/8
    Theon t = qr_tournamon(2);
    Model cyc = Model::empty(theory_tournament(2).sig, 3);
    cyc.add(0, {1, 2});
    cyc.add(0, {2, 3});
    cyc.add(0, {3, 1});
    auto [lab, unl] = estimate_density(t, cyc, 200000, 31, 2);
    CHECK(std::abs(lab.value - 0.125) < 4 * lab.stderr_ + 1e-9);
    CHECK(std::abs(unl.value - 0.25) < 4 * unl.stderr_ + 1e-9);
    // unlabeled = labeled * n!/|Aut|
    CHECK(std::abs(unl.value - lab.value * 2.0) < 4 * (unl.stderr_ + 2 * lab.stderr_));

    // p=0 graphon: any model with an edge has density exactly 0
    Theon zero = qr_hypergraphon(2, 0.0);
    Model edge = Model::empty(theory_graph().sig, 2);
    edge.add(0, {1, 2});
    edge.add(0, {2, 1});
    auto [zl, zu] = estimate_density(zero, edge, 5000, 1, 1);
    CHECK(zl.value == 0.0);
    CHECK(zu.value == 0.0);
}

TEST_CASE("independent coupling factorizes labeled densities") {
    Theon coupled = independent_coupling({qr_hypergraphon(2, 0.5), linear_order_theon()});
    Realizer r(coupled, 3);
    const std::uint64_t N = 200000;
    CellCounts cells = count_cells(r, N, 13, 2);
    // every coupled cell's frequency matches the product of factor densities
    std::uint64_t checked = 0;
    for (const auto& [bits, count] : cells) {
        Model m = r.model_of(bits);
        const size_t edges = m.rels[0].size() / 2;
        const double graph_density = std::pow(0.5, 3.0); // p^e (1-p)^(3-e) at p = 1/2
        const double order_density = 1.0 / 6.0;
        DensityEstimate est = bernoulli_estimate(count, N, 13);
        CHECK(std::abs(est.value - graph_density * order_density) < 4 * est.stderr_ + 1e-9);
        (void)edges;
        ++checked;
    }
    CHECK(checked == 8 * 6);
}

TEST_CASE("flattenings of the spec examples are constant p") {
    for (double p : {0.3, 0.5}) {
        Theon g = qr_hypergraphon(2, p);
        Theon s = skew_graphon(p);
        for (int probe = 0; probe < 4; ++probe) {
            Point low = sample_point(2, 1, 1, split_seed(55, probe));
            DensityEstimate wg = estimate_flattening(g, 0, 1, low, 20000, split_seed(56, probe));
            DensityEstimate ws = estimate_flattening(s, 0, 1, low, 20000, split_seed(57, probe));
            CHECK(std::abs(wg.value - p) < 4 * wg.stderr_ + 1e-9);
            CHECK(std::abs(ws.value - p) < 4 * ws.stderr_ + 1e-9);
        }
    }
    // qr-k-hypergraphon at ell = k-1
    Theon h3 = qr_hypergraphon(3, 0.4);
    Point low = sample_point(3, 2, 1, 99);
    DensityEstimate w = estimate_flattening(h3, 0, 2, low, 20000, 100);
    CHECK(std::abs(w.value - 0.4) < 4 * w.stderr_ + 1e-9);
}

TEST_CASE("density via flattenings agrees with direct estimation") {
    Model path = Model::empty(theory_graph().sig, 3);
    path.add(0, {1, 2});
    path.add(0, {2, 1});
    path.add(0, {2, 3});
    path.add(0, {3, 2});
    for (const Theon& t : {qr_hypergraphon(2, 0.5), skew_graphon(0.3)}) {
        DensityEstimate nested = density_via_flattenings(t, path, 400, 400, 61);
        auto [direct, unl] = estimate_density(t, path, 200000, 62, 2);
        CAPTURE(t.name);
        CHECK(std::abs(nested.value - direct.value) <
              4 * std::sqrt(nested.stderr_ * nested.stderr_ + direct.stderr_ * direct.stderr_) + 1e-9);
    }
}

TEST_CASE("theon expression JSON round-trip") {
    for (const Theon& t : {qr_tournamon(2), skew_graphon(0.3), dev_not_uinduce(2, 0.3), linear_order_theon(),
                           independence_not_disc(3, 1, 0.4)}) {
        nlohmann::json j = theon_to_json(t);
        Theon back = theon_from_json(j);
        // identical membership on shared points
        for (int trial = 0; trial < 100; ++trial) {
            Point theta = sample_theta(t.max_arity(), GroundSpace{t.dims}, t.max_arity(), split_seed(7, trial));
            for (size_t p = 0; p < t.peons.size(); ++p)
                CHECK(eval_membership_id(t, (int)p, theta) == eval_membership_id(back, (int)p, theta));
        }
    }
}

TEST_CASE("name clash in couplings is an error without a rename") {
    CHECK_THROWS_WITH_AS(independent_coupling({qr_hypergraphon(2, 0.5), qr_hypergraphon(2, 0.3)}),
                         doctest::Contains("clash"), std::invalid_argument);
    CHECK_NOTHROW(independent_coupling({qr_hypergraphon(2, 0.5), qr_hypergraphon(2, 0.3)}, {"_1", "_2"}));
}
