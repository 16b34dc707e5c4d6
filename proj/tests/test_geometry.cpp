#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "frackac/errors.hpp"
#include "frackac/geometry.hpp"
#include "frackac/rng.hpp"

using namespace frackac;
using geometry::Domain;

TEST_CASE("contains: spot checks and the open-set convention") {
    const auto disk = Domain::unit_ball(2);
    CHECK(disk.contains(std::vector{0.0, 0.0}));
    CHECK(disk.contains(std::vector{0.6, -0.79}));
    CHECK_FALSE(disk.contains(std::vector{1.0, 0.0}));
    CHECK_FALSE(disk.contains(std::vector{0.8, 0.8}));

    const auto l = Domain::l_shape();
    CHECK_FALSE(l.contains(std::vector{0.5, 0.5}));
    CHECK(l.contains(std::vector{-0.5, 0.5}));
    CHECK(l.contains(std::vector{0.5, -0.5}));
    CHECK(l.contains(std::vector{-0.5, -0.5}));
    CHECK(l.contains(std::vector{0.0, -0.5}));
    CHECK_FALSE(l.contains(std::vector{0.0, 0.0}));
    CHECK_FALSE(l.contains(std::vector{0.0, 0.5}));
    CHECK_FALSE(l.contains(std::vector{-1.0, -0.5}));
    CHECK_FALSE(l.contains(std::vector{1.5, 1.5}));

    const auto star = Domain::hailstone();
    CHECK(star.contains(std::vector{1.05, 0.0}));
    CHECK_FALSE(star.contains(std::vector{1.15, 0.0}));
    CHECK(star.contains(std::vector{0.0, 0.0}));

    const Domain box(geometry::HyperRectangle{{0.0, 0.0, 0.0}, {1.0, 2.0, 3.0}});
    CHECK(box.contains(std::vector{0.5, 1.5, 2.5}));
    CHECK_FALSE(box.contains(std::vector{0.5, 2.0, 2.5}));

    CHECK_THROWS_AS(disk.contains(std::vector{0.0, 0.0, 0.0}), UsageError);
    CHECK_FALSE(disk.contains(std::vector{HUGE_VAL, 0.0}));
    CHECK_FALSE(star.contains(std::vector{1e308, 1e308}));
}

TEST_CASE("polar star: boundary is sharp on both sides") {
    const auto star = Domain::hailstone();
    const auto& s = std::get<geometry::PolarStar>(star.shape());
    for (int i = 0; i < 1000; ++i) {
        const double theta = 2.0 * std::numbers::pi * (i + 0.5) / 1000.0 - std::numbers::pi;
        const double r = s.boundary_radius(theta);
        CHECK(star.contains(std::vector{(r - 1e-9) * std::cos(theta), (r - 1e-9) * std::sin(theta)}));
        CHECK_FALSE(star.contains(std::vector{(r + 1e-9) * std::cos(theta), (r + 1e-9) * std::sin(theta)}));
    }
}

TEST_CASE("volume") {
    CHECK(std::abs(Domain::unit_ball(2).volume() - std::numbers::pi) <= 1e-14);
    CHECK(std::abs(Domain::unit_ball(3).volume() - 4.0 * std::numbers::pi / 3.0) <= 1e-14);
    const double v100 = std::pow(std::numbers::pi, 50) / std::tgamma(51.0);
    CHECK(std::abs(Domain::unit_ball(100).volume() / v100 - 1.0) <= 1e-12);
    CHECK(Domain::l_shape().volume() == 3.0);
    // ½∫R² over a trigonometric polynomial: π(base² + ½Σ amp²).
    CHECK(std::abs(Domain::hailstone().volume() - std::numbers::pi * (1.0 + 0.5 * (0.81 + 0.01))) <= 1e-12);
    CHECK(std::abs(Domain(geometry::HyperRectangle{{-1.0, 0.0}, {1.0, 0.5}}).volume() - 1.0) <= 1e-15);
    CHECK(std::abs(Domain(geometry::Ball{{1.0, 2.0}, 0.5}).volume() - 0.25 * std::numbers::pi) <= 1e-14);
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(Domain::unit_ball(1), ConfigError);
    CHECK_THROWS_AS(Domain(geometry::Ball{{0.0, 0.0}, -1.0}), ConfigError);
    CHECK_THROWS_AS(Domain(geometry::HyperRectangle{{0.0, 0.0}, {1.0, 0.0}}), ConfigError);
    CHECK_THROWS_AS(Domain(geometry::PolarStar{0.5, {{3, 0.8}}, {}}), ConfigError);
}

TEST_CASE("bounding data: every contained point lies within the bounding radius") {
    for (const auto& d : {Domain::unit_ball(2), Domain::l_shape(), Domain::hailstone(),
                          Domain(geometry::HyperRectangle{{0.0, 0.0}, {2.0, 1.0}})}) {
        RngStream rng(3, 3);
        for (const auto& p : geometry::sample_interior_points(d, 20000, rng)) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) d2 += (p[i] - d.centroid()[i]) * (p[i] - d.centroid()[i]);
            REQUIRE(std::sqrt(d2) <= d.bounding_radius());
            REQUIRE(d.contains(p));
        }
    }
}

TEST_CASE("interior sampling: moments and area fractions") {
    RngStream rng(10, 0);
    const auto disk = geometry::sample_interior_points(Domain::unit_ball(2), 100000, rng);
    double m = 0.0;
    for (const auto& p : disk) m += p[0] * p[0] + p[1] * p[1];
    CHECK(std::abs(m / 1e5 - 0.5) <= 0.01);

    const auto lpts = geometry::sample_interior_points(Domain::l_shape(), 100000, rng);
    int upper_left = 0;
    for (const auto& p : lpts) upper_left += (p[0] < 0.0 && p[1] > 0.0);
    CHECK(std::abs(upper_left / 1e5 - 1.0 / 3.0) <= 0.01);

    // n = 100: direct sampling, E|x|² = n / (n + 2).
    const auto big = geometry::sample_interior_points(Domain::unit_ball(100), 20000, rng);
    double r2 = 0.0;
    for (const auto& p : big) {
        double s = 0.0;
        for (double c : p) s += c * c;
        REQUIRE(s < 1.0);
        r2 += s;
    }
    CHECK(std::abs(r2 / 20000 - 100.0 / 102.0) <= 0.002);

    CHECK_THROWS_AS(geometry::sample_interior_points(Domain::unit_ball(2), 0, rng), UsageError);
}

TEST_CASE("interior sampling: rejection acceptance rate matches the volume ratio") {
    const int n = 100000;
    for (const auto& d : {Domain::unit_ball(2), Domain::l_shape()}) {
        RngStream rng(12, 0);
        int accepted = 0;
        std::vector<double> p(2);
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < 2; ++k) p[k] = d.box_lower()[k] + (d.box_upper()[k] - d.box_lower()[k]) * rng.uniform();
            accepted += d.contains(p);
        }
        const double q = d.volume() / 4.0;
        CHECK(std::abs(accepted / double(n) - q) <= 3.0 * std::sqrt(q * (1.0 - q) / n));
    }
}

TEST_CASE("interior sampling: pathological acceptance rate is a configuration error") {
    RngStream rng(1, 0);
    // Cancelling modes leave R ≡ 1 but inflate the bounding box to ±2001.
    const Domain inflated(geometry::PolarStar{1.0, {{1, 1000.0}, {1, -1000.0}}, {}});
    CHECK(std::abs(inflated.volume() - std::numbers::pi) < 1e-9);
    CHECK_THROWS_AS(geometry::sample_interior_points(inflated, 10, rng), ConfigError);
}

TEST_CASE("domain equality") {
    CHECK(Domain::unit_ball(2) == Domain::unit_ball(2));
    CHECK_FALSE(Domain::unit_ball(2) == Domain::unit_ball(3));
    CHECK_FALSE(Domain::unit_ball(2) == Domain::l_shape());
    CHECK(Domain::hailstone() == Domain::hailstone());
    CHECK(Domain::hailstone().kind() == "polar_star");
}
