#include <doctest.h>

#include "mono/series.hpp"

#include <random>

using namespace mono;

namespace {

Exponent E(std::vector<unsigned> v) { return Exponent(std::move(v)); }

// Builds a series from (exponent, coefficient) pairs.
Series S(unsigned nvars, std::vector<std::pair<std::vector<unsigned>, long>> terms,
         Trunc trunc = std::nullopt) {
    Series s(nvars, trunc);
    for (auto& [e, c] : terms) s.set_coeff(E(e), rat(c));
    return s;
}

Series random_series(std::mt19937& rng, unsigned nvars, unsigned maxdeg, Trunc trunc) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<unsigned> deg(0, maxdeg);
    Series s(nvars, trunc);
    for (int t = 0; t < 6; ++t) {
        Exponent a = Exponent::zeros(nvars);
        for (unsigned i = 0; i < nvars; ++i) a[i] = deg(rng);
        s.set_coeff(a, rat(coef(rng)));
    }
    return s;
}

} // namespace

TEST_CASE("graded lex term order") {
    GrlexLess lt;
    CHECK(lt(E({1, 0}), E({1, 1})));     // degree first
    CHECK(lt(E({0, 2}), E({1, 1})));     // lex tie-break within a degree
    CHECK_FALSE(lt(E({1, 1}), E({0, 2})));
    CHECK_FALSE(lt(E({2, 0}), E({2, 0})));
    CHECK(E({1, 2}).leq(E({2, 2})));
    CHECK_FALSE(E({1, 2}).leq(E({2, 1})));
    CHECK_FALSE(E({1, 2}).comparable(E({2, 1})));
}

TEST_CASE("arithmetic respects the tighter truncation") {
    Series f = S(2, {{{0, 0}, 1}, {{1, 0}, 1}}, 3);       // 1 + x
    Series g = S(2, {{{0, 1}, 1}, {{0, 3}, 1}}, 2);       // y + y^3, but trunc 2 drops y^3
    CHECK(g.term_count() == 1);
    Series s = f + g;
    REQUIRE(s.trunc() == Trunc(2));
    CHECK(s.coeff(E({0, 1})) == rat(1));
    Series p = f * g;
    REQUIRE(p.trunc() == Trunc(2));
    CHECK(p.coeff(E({0, 1})) == rat(1));
    CHECK(p.coeff(E({1, 1})) == rat(1));
    CHECK(p.coeff(E({1, 3})) == rat(0)); // beyond trunc
    CHECK(p.term_count() == 2);
}

TEST_CASE("cancellation drops stored zeros") {
    Series f = S(2, {{{1, 0}, 2}, {{0, 1}, 3}});
    Series g = S(2, {{{1, 0}, -2}});
    Series s = f + g;
    CHECK(s.term_count() == 1);
    CHECK(s.coeff(E({0, 1})) == rat(3));
    CHECK((f - f).is_zero());
}

TEST_CASE("multiplication is commutative and distributes over addition") {
    std::mt19937 rng(7);
    for (int i = 0; i < 40; ++i) {
        Series a = random_series(rng, 3, 3, 8);
        Series b = random_series(rng, 3, 3, 8);
        Series c = random_series(rng, 3, 3, 8);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("monomial divide") {
    Series f = S(2, {{{2, 1}, 1}, {{1, 1}, -3}});        // x^2 y - 3 x y
    Series q = f.monomial_divide(0);
    CHECK(q == S(2, {{{1, 1}, 1}, {{0, 1}, -3}}));
    CHECK_THROWS_WITH_AS(q.monomial_divide(0), doctest::Contains("exponent 0 in variable 1"),
                         Error);
}

TEST_CASE("content split") {
    Series f = S(2, {{{2, 1}, 1}, {{3, 2}, 5}});
    auto [gamma, red] = f.split_content();
    CHECK(gamma == E({2, 1}));
    CHECK(red == S(2, {{{0, 0}, 1}, {{1, 1}, 5}}));
}

TEST_CASE("regularity order") {
    // y^2 - x^3: pure y-part is y^2.
    Series f = S(2, {{{0, 2}, 1}, {{3, 0}, -1}});
    CHECK(regularity_order(f) == 2u);
    // x alone never meets the y-axis: undefined.
    CHECK_FALSE(regularity_order(S(2, {{{1, 0}, 1}})).has_value());
    // Units are regular of order 0.
    CHECK(regularity_order(S(2, {{{0, 0}, 2}, {{0, 1}, 1}})) == 0u);
}

TEST_CASE("normality: exact decisions") {
    // x^2 y^2 (1 + x): normal.
    Series f = S(2, {{{2, 2}, 1}, {{3, 2}, 1}});
    Normality n = is_normal(f);
    REQUIRE(n.kind == Normality::Kind::Normal);
    CHECK(n.certificate->alpha == E({2, 2}));
    CHECK(n.certificate->unit_constant == rat(1));
    CHECK(n.certificate->reconstruct() == f);

    // x^2 + y^2: the componentwise min (0,0) is not in the support.
    CHECK(is_normal(S(2, {{{2, 0}, 1}, {{0, 2}, 1}})).kind == Normality::Kind::NotNormal);

    CHECK_THROWS_AS(is_normal(Series::zero(2)), Error);
}

TEST_CASE("normality at a finite truncation") {
    // x truncated at degree 1 in two variables: a hidden y^2 term could
    // make it not-normal, so the answer is unknown.
    Series f = S(2, {{{1, 0}, 1}}, 1);
    CHECK(is_normal(f).kind == Normality::Kind::UnknownAtTruncation);
    // One variable: always decidable.
    CHECK(is_normal(S(1, {{{1}, 1}}, 1)).kind == Normality::Kind::Normal);
    // alpha = 0: every hidden term is comparable to it.
    CHECK(is_normal(S(2, {{{0, 0}, 1}, {{1, 0}, 1}}, 1)).kind == Normality::Kind::Normal);
    // Incomparable stored exponents decide not-normal even when truncated.
    CHECK(is_normal(S(2, {{{2, 0}, 1}, {{0, 2}, 1}}, 2)).kind == Normality::Kind::NotNormal);
}

TEST_CASE("unit inverse") {
    Series u = S(2, {{{0, 0}, 1}, {{1, 0}, 1}}); // 1 + x
    Series v = unit_inverse(u, 5);
    // Alternating geometric series.
    for (unsigned k = 0; k <= 5; ++k)
        CHECK(v.coeff(E({k, 0})) == rat(k % 2 == 0 ? 1 : -1));
    Series one = Series::constant(2, 1, 5);
    CHECK(u.truncated(5) * v == one);

    CHECK_THROWS_AS(unit_inverse(S(2, {{{1, 0}, 1}}), 4), Error);

    std::mt19937 rng(11);
    for (int i = 0; i < 25; ++i) {
        Series w = random_series(rng, 2, 3, 6);
        w.set_coeff(Exponent::zeros(2), rat(i % 3 + 1));
        CHECK(w.truncated(6) * unit_inverse(w, 6) == Series::constant(2, 1, 6));
    }
}

TEST_CASE("weierstrass coefficient split") {
    // (1+x) y^2 + x y + x^2, regular of order 2 in y.
    Series f = S(2, {{{0, 2}, 1}, {{1, 2}, 1}, {{1, 1}, 1}, {{2, 0}, 1}});
    auto [u, lower] = weierstrass_coeffs(f, 2);
    CHECK(u == S(2, {{{0, 0}, 1}, {{1, 0}, 1}}));
    REQUIRE(lower.size() == 2);
    CHECK(lower[0] == S(1, {{{1}, 1}}));     // F_1 = x
    CHECK(lower[1] == S(1, {{{2}, 1}}));     // F_2 = x^2
    // Recombine: U y^2 + F_1 y + F_2 = f.
    Series y = Series::variable(2, 1);
    CHECK(u * y * y + lower[0].embedded(2) * y + lower[1].embedded(2) == f);

    CHECK_THROWS_AS(weierstrass_coeffs(f, 1), Error);
    CHECK_THROWS_AS(weierstrass_coeffs(f, 3), Error);
}

TEST_CASE("degree slice polynomials") {
    // x^2 + x y + y^3.
    Series f = S(2, {{{2, 0}, 1}, {{1, 1}, 1}, {{0, 3}, 1}});
    CHECK(qk_polynomials(f, 2) == S(1, {{{2}, 1}, {{1}, 1}}));
    CHECK(qk_polynomials(f, 3) == S(1, {{{0}, 1}}));
    CHECK(qk_polynomials(f, 1).is_zero());
}

TEST_CASE("formal root, exact case") {
    // y^2 + 2xy: derivative 2y + 2x has root y = -x, exactly.
    Series f = S(2, {{{0, 2}, 1}, {{1, 1}, 2}});
    Series b = formal_root_in_xn(f, 2, 8);
    CHECK_FALSE(b.trunc().has_value());
    CHECK(b == S(1, {{{1}, -1}}));

    // y^3 - 3xy^2: second derivative 6y - 6x, root y = x.
    Series g = S(2, {{{0, 3}, 1}, {{1, 2}, -3}});
    CHECK(formal_root_in_xn(g, 3, 8) == S(1, {{{1}, 1}}));
}

TEST_CASE("formal root, series case") {
    // (1-x) y^2 - 2xy: derivative root y = x/(1-x) = x + x^2 + ...
    Series f = S(2, {{{0, 2}, 1}, {{1, 2}, -1}, {{1, 1}, -2}});
    Series b = formal_root_in_xn(f, 2, 5);
    REQUIRE(b.trunc().has_value());
    for (unsigned k = 1; k <= 5; ++k) CHECK(b.coeff(E({k})) == rat(1));
    CHECK(b.coeff(E({0})) == rat(0));
    // The defining equation holds through the requested degree.
    Series bb = b.embedded(2);
    Series res = f.derivative(1).truncated(5).substitute_var(1, bb);
    CHECK(res.is_zero());
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937 rng(23);
    for (int i = 0; i < 30; ++i) {
        Series a = random_series(rng, 2, 3, 7);
        Series b = random_series(rng, 2, 3, 7);
        Series g = random_series(rng, 2, 2, 7);
        g.set_coeff(Exponent::zeros(2), rat(0)); // image must vanish at 0
        CHECK((a * b).substitute_var(1, g) == a.substitute_var(1, g) * b.substitute_var(1, g));
        CHECK((a + b).substitute_var(1, g) == a.substitute_var(1, g) + b.substitute_var(1, g));
    }
}

TEST_CASE("evaluation matches substitution of constants on polynomials") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> pt(-3, 3);
    for (int i = 0; i < 30; ++i) {
        Series a = random_series(rng, 3, 3, std::nullopt);
        std::vector<Rational> p{rat(pt(rng)), rat(pt(rng)), rat(pt(rng), 2)};
        Rational direct = a.evaluate(p);
        double approx = a.evaluate_double({p[0].get_d(), p[1].get_d(), p[2].get_d()});
        CHECK(std::abs(direct.get_d() - approx) < 1e-9 * (1 + std::abs(direct.get_d())));
    }
}
