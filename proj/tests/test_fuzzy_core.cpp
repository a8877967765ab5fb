#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "it2fuzzy/fuzzy_core.hpp"
#include "it2fuzzy/pendulum_controllers.hpp"
#include "oracles.hpp"

using namespace it2fuzzy;

namespace {

LinguisticVariable unit_partition(const std::string& name) {
    return LinguisticVariable(name, {-1.0, 1.0},
                              {{"N", make_triangle(-1, -1, 0)}, {"Z", make_triangle(-1, 0, 1)},
                               {"P", make_triangle(0, 1, 1)}});
}

LinguisticVariable output_variable() {
    return LinguisticVariable("out", {0.0, 4.0},
                              {{"A", make_triangle(0, 1, 2)}, {"B", make_triangle(1, 2, 3)},
                               {"C", make_triangle(2, 3, 4)}});
}

T1System two_input_system(std::size_t grid = kDefaultGridSize) {
    return T1System({unit_partition("x"), unit_partition("y")}, output_variable(),
                    RuleBase(std::vector<Rule>{{{"N", "N"}, "A"}, {{"Z", "Z"}, "B"}, {{"P", "P"}, "C"}, {{"N", "P"}, "B"}}), grid);
}

}  // namespace

TEST_CASE("fuzzify reports every term") {
    const auto v = unit_partition("x");
    auto d = fuzzify(v, 0.0);
    CHECK(d.at("Z") == 1.0);
    CHECK(d.at("N") == 0.0);
    CHECK(d.at("P") == 0.0);

    d = fuzzify(v, -1.0);
    CHECK(d.at("N") == 1.0);

    d = fuzzify(v, 0.5);
    CHECK(d.at("Z") == doctest::Approx(0.5));
    CHECK(d.at("P") == doctest::Approx(0.5));
    CHECK(d.at("N") == 0.0);

    const auto deg = term_degrees(v, 0.5);
    REQUIRE(deg.size() == 3);
    CHECK(deg[1] == doctest::Approx(0.5));
}

TEST_CASE("pendulum error partition at the midpoint of an overlap") {
    const auto e = pendulum::error_variable();
    const double q = pendulum::kInputBound;
    const auto d = fuzzify(e, q / 2);
    CHECK(d.at("Z") + d.at("P") == doctest::Approx(1.0));
    CHECK(d.at("Z") == doctest::Approx(0.5));
}

TEST_CASE("variable validation") {
    CHECK_THROWS_AS(LinguisticVariable("v", {1.0, 1.0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(LinguisticVariable("v", {0.0, 1.0}, {{"A", make_triangle(0, 0.5, 1)}, {"A", make_triangle(0, 0.2, 1)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(LinguisticVariable("v", {0.0, 1.0}, {{"A", make_triangle(0, 0.5, 2)}}), std::invalid_argument);
}

TEST_CASE("rulebase and system validation") {
    CHECK_THROWS_AS(RuleBase(std::vector<Rule>{{{"N"}, "A"}, {{"N"}, "B"}}), std::invalid_argument);
    CHECK_THROWS_AS(T1System({unit_partition("x")}, output_variable(), RuleBase(std::vector<Rule>{{{"N", "Z"}, "A"}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(T1System({unit_partition("x")}, output_variable(), RuleBase(std::vector<Rule>{{{"Q"}, "A"}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(T1System({unit_partition("x")}, output_variable(), RuleBase(std::vector<Rule>{{{"N"}, "D"}})),
                    std::invalid_argument);
}

TEST_CASE("fire strengths use min") {
    const auto sys = two_input_system();
    const std::array<double, 2> in{0.0, 0.0};
    auto s = fire_strengths(sys, in);
    REQUIRE(s.size() == 4);
    CHECK(s[1].strength == 1.0);
    CHECK(s[0].strength == 0.0);

    // x: Z = 0.7, P = 0.3 ; y: Z = 0.3, P = 0.7
    const std::array<double, 2> in2{0.3, 0.7};
    s = fire_strengths(sys, in2);
    CHECK(s[1].strength == doctest::Approx(0.3));
    CHECK(s[2].strength == doctest::Approx(0.3));

    const std::array<double, 1> bad{0.0};
    CHECK_THROWS_AS(fire_strengths(sys, bad), std::invalid_argument);
    CHECK_THROWS_AS(infer(sys, bad), std::invalid_argument);
}

TEST_CASE("all-zero degrees give zero strengths and an undefined output") {
    const auto sys = T1System({unit_partition("x")}, output_variable(), RuleBase(std::vector<Rule>{{{"N"}, "A"}}));
    const std::array<double, 1> in{0.5};
    const auto s = fire_strengths(sys, in);
    CHECK(s[0].strength == 0.0);
    const auto agg = infer(sys, in);
    for (double m : agg.mu) {
        CHECK(m == 0.0);
    }
    CHECK_FALSE(centroid(agg).has_value());
    CHECK_FALSE(t1_output(sys, in).has_value());
}

TEST_CASE("a single unit-strength rule reproduces its consequent") {
    const auto sys = two_input_system(401);
    const std::array<double, 2> in{0.0, 0.0};
    const auto agg = infer(sys, in);
    const auto b = make_triangle(1, 2, 3);
    for (std::size_t i = 0; i < agg.grid_size(); ++i) {
        CHECK(agg.mu[i] == doctest::Approx(b(agg.x(i))).epsilon(1e-12));
    }
}

TEST_CASE("two half-strength rules aggregate by pointwise max of clips") {
    const auto sys = two_input_system(401);
    const std::array<double, 4> strengths{0.5, 0.5, 0.0, 0.0};
    const auto agg = aggregate(sys, strengths);
    const auto a = make_triangle(0, 1, 2);
    const auto b = make_triangle(1, 2, 3);
    for (std::size_t i = 0; i < agg.grid_size(); ++i) {
        const double x = agg.x(i);
        const double expect = std::max(std::min(0.5, a(x)), std::min(0.5, b(x)));
        CHECK(agg.mu[i] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("centroid of a sampled triangle and of a clipped triangle") {
    const Universe u{0.0, 2.0};
    const auto tri = make_triangle(0, 1, 2);
    auto s = SampledMF::sample(tri, u, 1001);
    auto c = centroid(s);
    REQUIRE(c);
    CHECK(std::abs(c->x - 1.0) < 1e-9);

    for (double& m : s.mu) {
        m = std::min(m, 0.5);
    }
    c = centroid(s);
    REQUIRE(c);
    CHECK(std::abs(c->x - 1.0) < 1e-9);
    CHECK(std::abs(c->area - oracle_ref::clipped_triangle_area(0, 1, 2, 0.5)) < 2e-3);
    CHECK(oracle_ref::clipped_triangle_area(0, 1, 2, 0.5) == doctest::Approx(0.75));

    SampledMF zero{u, std::vector<double>(11, 0.0)};
    CHECK_FALSE(centroid(zero).has_value());
}

TEST_CASE("centroid of an asymmetric set matches a fine midpoint rule") {
    const Universe u{0.0, 4.0};
    const auto tri = make_triangle(0.5, 1.0, 4.0);
    const auto s = SampledMF::sample(tri, u, 1001);
    const auto c = centroid(s);
    const auto [cx, area] = oracle_ref::midpoint_centroid([&](double x) { return tri(x); }, 0.0, 4.0);
    REQUIRE(c);
    CHECK(c->x == doctest::Approx(cx).epsilon(1e-5));
    CHECK(c->area == doctest::Approx(area).epsilon(1e-5));
    CHECK(cx == doctest::Approx((0.5 + 1.0 + 4.0) / 3.0).epsilon(1e-6));
}

TEST_CASE("pendulum T1 controller sample points") {
    const auto sys = pendulum::t1_controller();
    const std::array<double, 2> origin{0.0, 0.0};
    const auto y0 = t1_output(sys, origin);
    REQUIRE(y0);
    CHECK(std::abs(*y0) < 1e-6);

    const double q = pendulum::kInputBound;
    const std::array<double, 2> corner{-q, -q};
    const auto yc = t1_output(sys, corner);
    REQUIRE(yc);
    // Only the (N, N) -> P rule fires, at full strength.
    const auto p = make_triangle(0.0, pendulum::kForceBound / 2, pendulum::kForceBound);
    const auto [cx, area] = oracle_ref::midpoint_centroid([&](double x) { return p(x); }, -pendulum::kForceBound,
                                                          pendulum::kForceBound);
    (void)area;
    CHECK(*yc == doctest::Approx(cx).epsilon(1e-6));
}

TEST_CASE("property: aggregate bounds and strength monotonicity") {
    const auto sys = two_input_system(301);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        std::array<double, 4> s{u(rng), u(rng), u(rng), u(rng)};
        const auto base = aggregate(sys, s);
        for (std::size_t r = 0; r < 4; ++r) {
            const auto cons = sys.consequent_samples(sys.consequent_term(r));
            for (std::size_t i = 0; i < base.grid_size(); ++i) {
                CHECK(base.mu[i] <= 1.0);
                CHECK(base.mu[i] >= std::min(s[r], cons[i]));
            }
        }
        const std::size_t which = static_cast<std::size_t>(k % 4);
        auto raised = s;
        raised[which] = std::min(1.0, raised[which] + u(rng));
        const auto up = aggregate(sys, raised);
        for (std::size_t i = 0; i < up.grid_size(); ++i) {
            CHECK(up.mu[i] >= base.mu[i]);
        }
    }
}

TEST_CASE("property: centroid stays inside the universe") {
    const auto sys = two_input_system();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        const std::array<double, 2> in{u(rng), u(rng)};
        const auto c = centroid(infer(sys, in));
        if (c) {
            CHECK(c->x >= 0.0);
            CHECK(c->x <= 4.0);
        }
    }
}

TEST_CASE("property: pendulum T1 controller is antisymmetric") {
    const auto sys = pendulum::t1_controller();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-pendulum::kInputBound, pendulum::kInputBound);
    for (int k = 0; k < 300; ++k) {
        const std::array<double, 2> a{u(rng), u(rng)};
        const std::array<double, 2> b{-a[0], -a[1]};
        CHECK(std::abs(*t1_output(sys, a) + *t1_output(sys, b)) < 1e-6);
    }
}

TEST_CASE("property: grid refinement error shrinks quadratically") {
    // Random clipped-triangle aggregates; error against a very fine grid.
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const double a = 4.0 * u(rng) * 0.4;
        const double b = a + 0.3 + u(rng);
        const double c = b + 0.3 + u(rng);
        const double h = 0.2 + 0.8 * u(rng);
        const auto tri = make_triangle(a, b, c);
        const Universe uni{0.0, 4.0};
        auto at = [&](std::size_t n) {
            auto s = SampledMF::sample(tri, uni, n);
            for (double& m : s.mu) {
                m = std::min(m, h);
            }
            return centroid(s)->x;
        };
        const double ref = at(64001);
        const double e1 = std::abs(at(251) - ref);
        const double e2 = std::abs(at(501) - ref);
        const double e3 = std::abs(at(1001) - ref);
        // Kinks off the grid make the error noisy; bound it by C / n^2.
        CHECK(e1 < 10.0 / (250.0 * 250.0));
        CHECK(e2 < 10.0 / (500.0 * 500.0));
        CHECK(e3 < 10.0 / (1000.0 * 1000.0));
    }
}
