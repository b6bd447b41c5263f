#include <doctest.h>

#include "mono/hsets.hpp"

#include <random>

using namespace mono;

namespace {

Exponent E(std::vector<unsigned> v) { return Exponent(std::move(v)); }

Series S(unsigned nvars, std::vector<std::pair<std::vector<unsigned>, long>> terms,
         Trunc trunc = std::nullopt) {
    Series s(nvars, trunc);
    for (auto& [e, c] : terms) s.set_coeff(E(e), rat(c));
    return s;
}

SubQuadrant Q(std::vector<FactorSign> kinds, Rational radius = rat(1)) {
    SubQuadrant q;
    for (FactorSign k : kinds) q.factors.push_back({k, radius});
    return q;
}

constexpr FactorSign Z = FactorSign::Zero;
constexpr FactorSign P = FactorSign::Pos;
constexpr FactorSign N = FactorSign::Neg;

// A point of the quadrant with coordinates at fractions num/64 of the radii.
std::vector<Rational> quadrant_point(const SubQuadrant& q, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(1, 63);
    std::vector<Rational> p;
    for (const QuadrantFactor& f : q.factors) {
        switch (f.kind) {
        case FactorSign::Zero: p.push_back(rat(0)); break;
        case FactorSign::Pos: p.push_back(f.radius * rat(num(rng), 64)); break;
        case FactorSign::Neg: p.push_back(f.radius * rat(-num(rng), 64)); break;
        }
    }
    return p;
}

} // namespace

TEST_CASE("sign on a sub-quadrant from the certificate data") {
    NormalCertificate cert;
    cert.alpha = E({2, 1});
    cert.unit_constant = rat(3);
    CHECK(sign_on_quadrant(cert, Q({P, N})) == -1);
    CHECK(sign_on_quadrant(cert, Q({N, N})) == -1);
    CHECK(sign_on_quadrant(cert, Q({N, P})) == 1);
    CHECK(sign_on_quadrant(cert, Q({Z, P})) == 0);

    NormalCertificate unit;
    unit.alpha = E({0, 0});
    unit.unit_constant = rat(-2);
    CHECK(sign_on_quadrant(unit, Q({P, P})) == -1);
    CHECK(sign_on_quadrant(unit, Q({Z, N})) == -1);

    NormalCertificate diag;
    diag.alpha = E({1, 1});
    diag.unit_constant = rat(1);
    CHECK(sign_on_quadrant(diag, Q({Z, P})) == 0);
    CHECK(sign_on_quadrant(diag, Q({N, P})) == -1);

    CHECK_THROWS_WITH_AS((void)sign_on_quadrant(cert, Q({P})),
                         doctest::Contains("dimensions"), Error);
}

TEST_CASE("membership quadrants of certified sets") {
    HBasicSet half; // {x(1+x) > 0}
    half.nvars = 1;
    half.polyradius = {rat(1)};
    half.ineqs = {S(1, {{{1}, 1}, {{2}, 1}})};
    auto qs = membership_quadrants(half);
    REQUIRE(qs.size() == 1);
    CHECK(qs[0].factors[0].kind == P);

    HBasicSet slice; // {x = 0, y > 0}
    slice.nvars = 2;
    slice.polyradius = {rat(1), rat(1)};
    slice.eq = S(2, {{{1, 0}, 1}});
    slice.ineqs = {S(2, {{{0, 1}, 1}})};
    qs = membership_quadrants(slice);
    REQUIRE(qs.size() == 1);
    CHECK(qs[0].factors[0].kind == Z);
    CHECK(qs[0].factors[1].kind == P);

    HBasicSet empty; // {-1 > 0}
    empty.nvars = 1;
    empty.polyradius = {rat(1)};
    empty.ineqs = {S(1, {{{0}, -1}})};
    CHECK(membership_quadrants(empty).empty());

    HBasicSet bad; // y^2 - x^2 is not normal
    bad.nvars = 2;
    bad.polyradius = {rat(1), rat(1)};
    bad.ineqs = {S(2, {{{0, 2}, 1}, {{2, 0}, -1}})};
    CHECK_THROWS_WITH_AS((void)membership_quadrants(bad),
                         doctest::Contains("certified"), Error);
}

TEST_CASE("predicted quadrant sign matches evaluation after few halvings") {
    std::mt19937 rng(20260826);
    std::uniform_int_distribution<int> nv(1, 3);
    std::uniform_int_distribution<int> small(0, 2);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> kind(0, 2);

    for (int iter = 0; iter < 100; ++iter) {
        unsigned n = static_cast<unsigned>(nv(rng));
        std::vector<unsigned> alpha(n);
        for (auto& a : alpha) a = static_cast<unsigned>(small(rng));

        // Unit with constant c0 and a tail of coefficient mass < 8|c0|,
        // so three radius halvings always pin the sign.
        long c0 = coef(rng);
        if (c0 == 0) c0 = 2;
        Series unit = Series::constant(n, rat(c0));
        long budget = 7 * std::abs(c0);
        for (int t = 0; t < 4 && budget > 0; ++t) {
            std::vector<unsigned> e(n);
            unsigned deg = 0;
            for (auto& x : e) {
                x = static_cast<unsigned>(small(rng));
                deg += x;
            }
            if (deg == 0) continue;
            long c = coef(rng) % (budget + 1);
            budget -= std::abs(c);
            unit.set_coeff(E(e), unit.coeff(E(e)) + rat(c));
        }
        Series f = unit.shifted(E(alpha));
        Normality nm = is_normal(f);
        REQUIRE(nm.is_normal());

        SubQuadrant q;
        for (unsigned i = 0; i < n; ++i)
            q.factors.push_back({static_cast<FactorSign>(kind(rng)), rat(1)});
        int predicted = sign_on_quadrant(*nm.certificate, q);

        bool agreed = false;
        for (int h = 0; h <= 3 && !agreed; ++h, q = q.halved()) {
            agreed = true;
            for (int s = 0; s < 100 && agreed; ++s)
                agreed = sign(f.evaluate(quadrant_point(q, rng))) == predicted;
        }
        CHECK(agreed);
    }
}

TEST_CASE("parametrize a half-line: identity chart, full coverage") {
    HBasicSet A;
    A.nvars = 1;
    A.polyradius = {rat(1)};
    A.ineqs = {S(1, {{{1}, 1}})};
    auto P1 = parametrize(A, {}, {rat(1, 2)}, rat(1, 32));
    REQUIRE(P1.charts.size() == 1);
    CHECK(P1.charts[0].path.steps.empty());
    CHECK(P1.charts[0].quadrant.factors[0].kind == P);
    CHECK(P1.report.samples == 15);
    CHECK(P1.report.covered == P1.report.samples);
    CHECK(P1.report.fraction() == 1.0);
}

TEST_CASE("parametrize the empty set: no charts, vacuous coverage") {
    HBasicSet A;
    A.nvars = 1;
    A.polyradius = {rat(1)};
    A.ineqs = {S(1, {{{0}, -1}})};
    auto P1 = parametrize(A, {}, {rat(1, 2)}, rat(1, 32));
    CHECK(P1.charts.empty());
    CHECK(P1.report.samples == 0);
    CHECK(P1.report.fraction() == 1.0);
}

TEST_CASE("parametrize the open cone y^2 > x^2") {
    HBasicSet A;
    A.nvars = 2;
    A.polyradius = {rat(1), rat(1)};
    A.ineqs = {S(2, {{{0, 2}, 1}, {{2, 0}, -1}})};

    auto P1 = parametrize(A, {}, {rat(1, 8), rat(1, 8)}, rat(1, 128));
    CHECK(P1.charts.size() == 10);
    CHECK(P1.report.samples > 200);
    CHECK(P1.report.covered == P1.report.samples);
    CHECK(P1.report.fraction() >= 0.99);

    // Soundness: chart samples map into A.
    std::mt19937 rng(7);
    for (const Chart& c : P1.charts) {
        SubQuadrant q = c.quadrant.halved().halved().halved();
        for (int s = 0; s < 25; ++s) {
            std::vector<Rational> image = evaluate_path_at(c.path, quadrant_point(q, rng));
            CHECK(sign(A.ineqs[0].evaluate(image)) > 0);
        }
    }

    // Preimages land in the claiming chart's quadrant.
    std::vector<Rational> p = {rat(1, 16), rat(1, 8)};
    bool hit = false;
    for (const Chart& c : P1.charts) {
        auto pre = chart_preimage(c, p);
        if (!pre) continue;
        hit = true;
        CHECK(c.quadrant.contains(*pre));
        CHECK(evaluate_path_at(c.path, *pre) == p);
    }
    CHECK(hit);
}

TEST_CASE("coverage report names the obstruction at uncovered samples") {
    // The cross {y^2 = x^2}: its points away from the axes sit exactly on
    // the lambda = +-1 branches, so a run expanding only {0, inf} cannot
    // cover them and the report must say which branches are missing.
    HBasicSet A;
    A.nvars = 2;
    A.polyradius = {rat(1), rat(1)};
    A.eq = S(2, {{{0, 2}, 1}, {{2, 0}, -1}});
    MonomializeConfig cfg;
    cfg.lambda_seed = {};
    auto P1 = parametrize(A, cfg, {rat(1, 8), rat(1, 8)}, rat(1, 128));
    CHECK(P1.report.covered < P1.report.samples);
    bool plus = false, minus = false, center = false;
    for (const std::string& note : P1.report.frontier_notes) {
        plus = plus || note.find("unexpanded branch lambda=1 ") != std::string::npos;
        minus = minus || note.find("unexpanded branch lambda=-1 ") != std::string::npos;
        center = center || note.find("center") != std::string::npos;
    }
    CHECK(plus);
    CHECK(minus);
    CHECK(center);

    // With the branch values seeded, everything but the blow-up center
    // itself is covered.
    cfg.lambda_seed = {rat(1), rat(-1)};
    auto P2 = parametrize(A, cfg, {rat(1, 8), rat(1, 8)}, rat(1, 128));
    CHECK(P2.report.covered == P2.report.samples - 1);
    CHECK(P2.report.fraction() >= 0.95);
}

TEST_CASE("graph lifting of a half-line") {
    HBasicSet A;
    A.nvars = 1;
    A.polyradius = {rat(1)};
    A.ineqs = {S(1, {{{1}, 1}})};
    LiftedSet L = lift_graphs(A, {rat(2)});
    CHECK(L.nvars == 2);
    REQUIRE(L.polyradius.size() == 2);
    CHECK(L.polyradius[1] == rat(2));
    REQUIRE(L.eqs.size() == 1);
    CHECK(L.eqs[0] == S(2, {{{0, 1}, 1}, {{1, 0}, -1}}));
    REQUIRE(L.ineqs.size() == 1);
    CHECK(L.ineqs[0] == S(2, {{{0, 1}, 1}}));

    // Fibered correspondence on samples.
    for (int k = -7; k <= 7; ++k) {
        std::vector<Rational> x = {rat(k, 8)};
        std::vector<Rational> lifted = {rat(k, 8), A.ineqs[0].evaluate(x)};
        CHECK(L.contains(lifted) == A.contains(x));
    }
}

TEST_CASE("coefficient-sum bound accepts and rejects graph bounds") {
    Series g = S(2, {{{2, 0}, 1}, {{1, 1}, 3}}); // x^2 + 3xy
    std::vector<Rational> r = {rat(1), rat(1)};
    CHECK(coefficient_sum_bound(g, r) == rat(4));

    HBasicSet A;
    A.nvars = 2;
    A.polyradius = r;
    A.ineqs = {g};
    CHECK_NOTHROW((void)lift_graphs(A, {rat(4)}));
    CHECK_THROWS_WITH_AS((void)lift_graphs(A, {rat(2)}), doctest::Contains("witness"), Error);
    try {
        (void)lift_graphs(A, {rat(2)});
    } catch (const Error& e) {
        CHECK(e.name() == "bound-too-small");
    }
}

TEST_CASE("lifting an equation-only set adds a pinned graph variable") {
    HBasicSet A;
    A.nvars = 1;
    A.polyradius = {rat(1)};
    A.eq = Series::zero(1);
    LiftedSet L = lift_graphs(A, {rat(1)});
    CHECK(L.nvars == 2);
    REQUIRE(L.eqs.size() == 1);
    CHECK(L.eqs[0] == S(2, {{{0, 1}, 1}})); // y_0 = 0
    CHECK(L.ineqs.empty());
}

TEST_CASE("sampled component counts") {
    HBasicSet two; // {x^2 > 1/4}
    two.nvars = 1;
    two.polyradius = {rat(1)};
    Series g(1, std::nullopt);
    g.set_coeff(E({2}), rat(1));
    g.set_coeff(E({0}), rat(-1, 4));
    two.ineqs = {g};
    CHECK(count_components_sampled(two, rat(1, 64)) == 2);

    // Monotone under refinement once the components are grid-separated.
    CHECK(count_components_sampled(two, rat(1, 16)) == 2);
    CHECK(count_components_sampled(two, rat(1, 32)) == 2);

    HBasicSet half;
    half.nvars = 1;
    half.polyradius = {rat(1)};
    half.ineqs = {S(1, {{{1}, 1}})};
    CHECK(count_components_sampled(half, rat(1, 64)) == 1);

    HBasicSet empty;
    empty.nvars = 1;
    empty.polyradius = {rat(1)};
    empty.ineqs = {S(1, {{{0}, -1}})};
    CHECK(count_components_sampled(empty, rat(1, 64)) == 0);

    HBasicSet cone;
    cone.nvars = 2;
    cone.polyradius = {rat(1, 8), rat(1, 8)};
    cone.ineqs = {S(2, {{{0, 2}, 1}, {{2, 0}, -1}})};
    CHECK(count_components_sampled(cone, rat(1, 128)) == 2);
}
