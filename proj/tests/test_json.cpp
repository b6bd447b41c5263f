#include <doctest.h>

#include "mono/json_io.hpp"

using namespace mono;

namespace {

Exponent E(std::vector<unsigned> v) { return Exponent(std::move(v)); }

Series S(unsigned nvars, std::vector<std::pair<std::vector<unsigned>, long>> terms,
         Trunc trunc = std::nullopt) {
    Series s(nvars, trunc);
    for (auto& [e, c] : terms) s.set_coeff(E(e), rat(c));
    return s;
}

} // namespace

TEST_CASE("series round-trip and schema checks") {
    Series s = S(2, {{{2, 1}, 3}, {{3, 1}, 1}});
    Json j = series_to_json(s);
    CHECK(j["vars"] == Json::array({"x", "y"}));
    CHECK(j["trunc"] == Json("exact"));
    CHECK(series_from_json(j) == s);

    Series t = S(3, {{{0, 1, 0}, -7}}, 5);
    CHECK(series_from_json(series_to_json(t)) == t);

    Json manual = {{"vars", {"x"}},
                   {"trunc", "exact"},
                   {"terms", {{{"exp", {1}}, {"coef", "1/2"}}, {{"exp", {1}}, {"coef", "1/2"}}}}};
    CHECK(series_from_json(manual) == S(1, {{{1}, 1}})); // coefficients accumulate

    CHECK_THROWS_AS((void)series_from_json(Json{{"vars", {"x"}}}), Error);
    CHECK_THROWS_AS(
        (void)series_from_json(Json{
            {"vars", {"x"}}, {"terms", {{{"exp", {1, 2}}, {"coef", "1"}}}}}),
        Error);
    try {
        (void)series_from_json(Json{{"vars", {"x"}}, {"terms", {{{"exp", {1}}, {"coef", "a"}}}}});
    } catch (const Error& e) {
        CHECK(e.name() == "schema");
    }
}

TEST_CASE("transform round-trips carry 1-based indices") {
    Json b = {{"kind", "blowup"}, {"i", 2}, {"j", 1}, {"lambda", "3/2"}};
    ElementaryTransform nu = transform_from_json(b);
    const auto* bu = std::get_if<BlowUp>(&nu);
    REQUIRE(bu);
    CHECK(bu->i == 1);
    CHECK(bu->j == 0);
    CHECK(*bu->lambda.value == rat(3, 2));
    CHECK(transform_from_json(transform_to_json(nu)) == nu);

    Json binf = {{"kind", "blowup"}, {"i", 2}, {"j", 1}, {"lambda", "inf"}};
    nu = transform_from_json(binf);
    bu = std::get_if<BlowUp>(&nu);
    REQUIRE(bu);
    CHECK(bu->i == 0); // normalized infinite chart swaps the pair
    CHECK(bu->j == 1);

    Json tau = {{"kind", "tschirnhausen"}, {"h", series_to_json(S(2, {{{1, 0}, 1}}))}};
    nu = transform_from_json(tau);
    const auto* ts = std::get_if<Tschirnhausen>(&nu);
    REQUIRE(ts);
    CHECK(ts->i == 1); // defaults to the last variable
    CHECK(transform_from_json(transform_to_json(nu)) == nu);

    Json sh = {{"kind", "shear"}, {"i", 2}, {"c", {"1"}}};
    nu = transform_from_json(sh);
    CHECK(std::get<Shear>(nu).c == std::vector<Rational>{rat(1)});
    CHECK(transform_from_json(transform_to_json(nu)) == nu);

    Json ram = {{"kind", "ramification"}, {"i", 1}, {"d", 2}, {"sign", "-"}};
    nu = transform_from_json(ram);
    CHECK(std::get<Ramification>(nu).sign == -1);
    CHECK(transform_from_json(transform_to_json(nu)) == nu);

    CHECK_THROWS_AS((void)transform_from_json(Json{{"kind", "twist"}}), Error);
    CHECK_THROWS_AS((void)transform_from_json(Json{{"kind", "shear"}, {"i", 2}, {"c", {"1", "2"}}}),
                    Error);

    TransformPath path;
    path.steps = {make_ramification(0, 2, 1), make_blowup(1, 0, Lambda(rat(0)))};
    TransformPath back = path_from_json(path_to_json(path));
    REQUIRE(back.steps.size() == 2);
    CHECK(back.steps[0] == path.steps[0]);
    CHECK(back.steps[1] == path.steps[1]);
}

TEST_CASE("set and manifold payloads") {
    HBasicSet a;
    a.nvars = 2;
    a.polyradius = {rat(1), rat(1)};
    a.eq = S(2, {{{1, 0}, 1}});
    a.ineqs = {S(2, {{{0, 1}, 1}})};
    Json j = hbasic_to_json(a);
    HBasicSet b = hbasic_from_json(j);
    CHECK(b.nvars == 2);
    CHECK(*b.eq == *a.eq);
    CHECK(b.ineqs == a.ineqs);

    Json no_eq = {{"polyradius", {"1"}}, {"eq", nullptr}, {"ineqs", Json::array()}};
    CHECK(!hbasic_from_json(no_eq).eq.has_value());
    CHECK_THROWS_AS((void)hbasic_from_json(Json{{"polyradius", {"0"}}}), Error);

    ManifoldSpec m;
    m.nvars = 2;
    m.split_n = 1;
    m.polyradius = {rat(1), rat(1)};
    m.ineqs = {S(2, {{{0, 1}, 1}, {{1, 0}, -1}})};
    ManifoldSpec back = manifold_from_json(manifold_to_json(m));
    CHECK(back.split_n == 1);
    CHECK(back.ineqs == m.ineqs);
    CHECK(back.dim() == 2);

    Json bad_hint = manifold_to_json(m);
    bad_hint["d"] = 1;
    CHECK_THROWS_AS((void)manifold_from_json(bad_hint), Error);
}

TEST_CASE("tree exports") {
    NodePtr root = monomialize({S(2, {{{0, 2}, 1}, {{2, 0}, -1}})});
    Json j = tree_to_json(root);
    REQUIRE(j.contains("family"));
    CHECK(j["family"]["i"] == 2);
    CHECK(j["family"]["j"] == 1);
    CHECK(j["expanded"].size() == 4);
    CHECK(j["expanded"]["0"]["leaf"] == true);
    CHECK(j["expanded"]["0"]["certificates"][0]["alpha"] == Json::array({2, 0}));

    std::string dot = tree_to_dot(root);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("lambda=inf") != std::string::npos);
    CHECK(dot.find("alpha=") != std::string::npos);

    // Deterministic output for identical input.
    CHECK(tree_to_dot(monomialize({S(2, {{{0, 2}, 1}, {{2, 0}, -1}})})) == dot);
}

TEST_CASE("chart and coverage payloads") {
    HBasicSet A;
    A.nvars = 1;
    A.polyradius = {rat(1)};
    A.ineqs = {S(1, {{{1}, 1}})};
    auto par = parametrize(A, {}, {rat(1, 2)}, rat(1, 32));
    Json charts = Json::array();
    for (const Chart& c : par.charts) charts.push_back(chart_to_json(c));
    REQUIRE(charts.size() == 1);
    CHECK(charts[0]["quadrant"][0]["sign"] == "+");
    CHECK(charts[0]["path"] == Json::array());
    Json cov = coverage_to_json(par.report);
    CHECK(cov["fraction"] == 1.0);
    CHECK(cov["samples"] == 15);
}
