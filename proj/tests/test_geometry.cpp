#include <cmath>
#include <random>

#include <doctest.h>

#include "circumnav/errors.hpp"
#include "circumnav/geometry.hpp"

using namespace circumnav;

TEST_CASE("wrap_angle maps into (-pi, pi] with the boundary at +pi") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(kTwoPi) == doctest::Approx(0.0));
    CHECK(wrap_angle(kPi + 0.25) == doctest::Approx(-kPi + 0.25));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-50.0, 50.0);
    for (int k = 0; k < 1000; ++k) {
        const double theta = U(rng);
        const double w = wrap_angle(theta);
        CHECK(w > -kPi);
        CHECK(w <= kPi);
        const double turns = (theta - w) / kTwoPi;
        CHECK(std::abs(turns - std::round(turns)) < 1e-9);
    }
}

TEST_CASE("wrap_angle rejects non-finite input") {
    CHECK_THROWS_AS(wrap_angle(std::nan("")), DegenerateGeometry);
    CHECK_THROWS_AS(wrap_angle(INFINITY), DegenerateGeometry);
}

TEST_CASE("relative_geometry range and line of sight") {
    const AgentState i{0.0, 0.0, 0.3, 1.0};
    const AgentState j{1.0, 1.0, -0.2, 2.0};
    const RelativeGeometry rel = relative_geometry(i, j);
    CHECK(rel.range == doctest::Approx(std::sqrt(2.0)));
    CHECK(rel.los == doctest::Approx(kPi / 4.0));
}

TEST_CASE("relative_geometry folds the -pi bearing onto +pi") {
    const AgentState i{0.0, 0.0, 0.0, 1.0};
    const AgentState behind{-1.0, 0.0, 0.0, 1.0};
    CHECK(relative_geometry(i, behind).los == doctest::Approx(kPi));
    const AgentState below{-1.0, -0.0, 0.0, 1.0};
    const double los = relative_geometry(i, below).los;
    CHECK(los > 0.0);  // atan2(-0, -1) = -pi must not leak through
    CHECK(los == doctest::Approx(kPi));
}

TEST_CASE("relative_geometry rejects coincident agents") {
    const AgentState i{2.0, -1.0, 0.0, 1.0};
    CHECK_THROWS_AS(relative_geometry(i, i), DegenerateGeometry);
}

TEST_CASE("polar_rates on hand-checked configurations") {
    SUBCASE("identical velocity vectors freeze the relative geometry") {
        const AgentState i{0.0, 0.0, 0.7, 1.3};
        const AgentState j{2.0, 1.0, 0.7, 1.3};
        const auto [rdot, ldot] = polar_rates(i, j);
        CHECK(rdot == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(ldot == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("neighbor crossing the line of sight") {
        const AgentState i{0.0, 0.0, 0.0, 1.0};
        const AgentState j{1.0, 0.0, kPi / 2.0, 1.0};
        const auto [rdot, ldot] = polar_rates(i, j);
        CHECK(rdot == doctest::Approx(-1.0));
        CHECK(ldot == doctest::Approx(1.0));
    }
    SUBCASE("head-on closing speed adds up") {
        const AgentState i{0.0, 0.0, 0.0, 1.0};
        const AgentState j{1.0, 0.0, kPi, 1.0};
        const auto [rdot, ldot] = polar_rates(i, j);
        CHECK(rdot == doctest::Approx(-2.0));
        CHECK(ldot == doctest::Approx(0.0));
    }
}

TEST_CASE("polar_rates matches finite differences of the true geometry") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> P(-5.0, 5.0), H(-3.0, 3.0), V(0.2, 2.0);
    for (int k = 0; k < 200; ++k) {
        AgentState i{P(rng), P(rng), H(rng), V(rng)};
        AgentState j{P(rng), P(rng), H(rng), V(rng)};
        if (distance(i.position(), j.position()) < 0.5) continue;
        const auto [rdot, ldot] = polar_rates(i, j);
        const double h = 1e-6;
        const AgentState i2 = advance_arc(i, 0.0, h);
        const AgentState j2 = advance_arc(j, 0.0, h);
        const RelativeGeometry a = relative_geometry(i, j);
        const RelativeGeometry b = relative_geometry(i2, j2);
        CHECK(rdot == doctest::Approx((b.range - a.range) / h).epsilon(1e-4));
        CHECK(ldot == doctest::Approx(wrap_angle(b.los - a.los) / h).epsilon(1e-4));
    }
}

TEST_CASE("advance_arc follows exact circles and lines") {
    SUBCASE("zero turn rate is a straight line") {
        const AgentState s{1.0, 2.0, 0.5, 2.0};
        const AgentState e = advance_arc(s, 0.0, 3.0);
        CHECK(e.x == doctest::Approx(1.0 + 6.0 * std::cos(0.5)));
        CHECK(e.y == doctest::Approx(2.0 + 6.0 * std::sin(0.5)));
        CHECK(e.gamma == 0.5);
    }
    SUBCASE("quarter turn lands on the analytic circle") {
        const AgentState s{0.0, 0.0, 0.0, 1.0};
        const AgentState e = advance_arc(s, 1.0, kPi / 2.0);
        CHECK(e.x == doctest::Approx(1.0));
        CHECK(e.y == doctest::Approx(1.0));
        CHECK(e.gamma == doctest::Approx(kPi / 2.0));
    }
    SUBCASE("tiny turn rates degrade gracefully to the line") {
        const AgentState s{0.0, 0.0, 0.0, 1.0};
        const AgentState e = advance_arc(s, 1e-12, 1.0);
        CHECK(e.x == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(e.y) < 1e-9);
    }
    SUBCASE("heading accumulates without wrapping") {
        const AgentState s{0.0, 0.0, 0.0, 1.0};
        const AgentState e = advance_arc(s, 1.0, 10.0 * kTwoPi);
        CHECK(e.gamma == doctest::Approx(10.0 * kTwoPi));
        CHECK(e.x == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(std::abs(e.y) < 1e-9);
    }
    SUBCASE("random arcs stay on the turning circle") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> U(-2.0, 2.0), T(0.1, 5.0);
        for (int k = 0; k < 200; ++k) {
            const AgentState s{U(rng), U(rng), U(rng), 0.3 + T(rng)};
            double u = U(rng);
            if (std::abs(u) < 0.05) u = 0.05;
            const double dt = T(rng);
            const AgentState e = advance_arc(s, u, dt);
            const double R = s.v / u;  // signed; center is left of heading for u > 0
            const Vec2 center{s.x - R * std::sin(s.gamma), s.y + R * std::cos(s.gamma)};
            CHECK(distance(e.position(), center) ==
                  doctest::Approx(std::abs(R)).epsilon(1e-10));
            CHECK(e.gamma == doctest::Approx(s.gamma + u * dt));
        }
    }
}
