#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperfoil/geometry.hpp"

using namespace hyperfoil;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("hyperboloid time") {
    CHECK(hyperboloid_time(1.0, 0.0) == doctest::Approx(1.0));
    CHECK(hyperboloid_time(2.0, 0.0) == doctest::Approx(2.0));
    CHECK(hyperboloid_time(2.0, 1.5) == doctest::Approx(2.5));
    CHECK_THROWS_AS(hyperboloid_time(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(hyperboloid_time(-1.0, 1.0), std::domain_error);
}

TEST_CASE("lorentz radius") {
    CHECK(lorentz_radius({1.0, {0, 0, 0}}) == doctest::Approx(1.0));
    CHECK(lorentz_radius({2.5, {1.5, 0, 0}}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(lorentz_radius({1.0, {1.0, 0, 0}}), std::domain_error);
}

TEST_CASE("area element factor") {
    CHECK(area_element_factor({3.0, {0, 0, 0}}) == doctest::Approx(1.0));
    CHECK(area_element_factor({2.5, {1.5, 0, 0}}) ==
          doctest::Approx(std::sqrt(6.25 + 2.25) / 2.5));
    // factor >= 1 everywhere
    for (double r : {0.1, 1.0, 5.0, 20.0})
        CHECK(area_element_factor({hyperboloid_time(2.0, r), {r, 0, 0}}) >= 1.0);
}

TEST_CASE("region bounds") {
    SUBCASE("truncated cone, T = 3") {
        auto rep = region_bounds_check(3.0, Region::lambda_prime());
        CHECK(rep.pass);
        CHECK(rep.t_max == doctest::Approx(5.0).epsilon(1e-2));  // (T^2+1)/2 at the cone edge
        CHECK(rep.t_max <= 9.0 + 1e-12);
    }
    SUBCASE("interior cone, T = 3") {
        auto rep = region_bounds_check(3.0, Region::interior_cone());
        CHECK(rep.pass);
        CHECK(rep.t_max == doctest::Approx(2.0 * 3.0 / std::sqrt(3.0)).epsilon(1e-2));
        CHECK(rep.t_max <= std::sqrt(2.0) * 3.0 + 1e-12);
    }
    SUBCASE("degenerate vertex T = 1") {
        auto rep = region_bounds_check(1.0, Region::lambda_prime());
        CHECK(rep.pass);
        CHECK(rep.t_min == doctest::Approx(1.0));
        CHECK(rep.t_max == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(region_bounds_check(0.5, Region::lambda_prime()), std::domain_error);
}

TEST_CASE("slice nodes satisfy the hyperboloid constraint") {
    for (double T : {1.5, 3.0, 10.0, 40.0}) {
        auto s = build_slice(T, Region::lambda_prime(), 256);
        for (size_t k = 0; k < s.size(); ++k) {
            const double c = s.t[k] * s.t[k] - s.r[k] * s.r[k] - T * T;
            CHECK(std::abs(c) <= 1e-12 * T * T);
            CHECK(s.r[k] <= s.t[k] - 1.0 + 1e-12);
        }
    }
}

TEST_CASE("slice quadrature oracles") {
    SUBCASE("constant integrand over a ball") {
        const double R = 2.0;
        auto s = build_slice_radial(3.0, 0.0, R, 256);
        double vol = 0.0;
        for (double w : s.w) vol += w;
        CHECK(vol == doctest::Approx(4.0 / 3.0 * kPi * R * R * R).epsilon(1e-3));
    }
    SUBCASE("gaussian integral") {
        auto s = build_slice_radial(3.0, 0.0, 6.0, 512);
        double val = 0.0;
        for (size_t k = 0; k < s.size(); ++k) val += s.w[k] * std::exp(-s.r[k] * s.r[k]);
        CHECK(val == doctest::Approx(std::pow(kPi, 1.5)).epsilon(1e-3));
    }
    SUBCASE("empty slice") {
        CHECK_THROWS_AS(build_slice(0.5, Region::lambda_prime(), 64), std::domain_error);
        CHECK_THROWS_AS(build_slice(1.0, Region::lambda_prime(), 64), std::domain_error);
    }
    SUBCASE("slab region selects the truncated-cone extent") {
        auto s = build_slice(3.0, Region::slab(2.0, 5.0), 64);
        CHECK(s.r.back() < 4.0);
        CHECK_THROWS_AS(build_slice(6.0, Region::slab(2.0, 5.0), 64), std::domain_error);
    }
}

TEST_CASE("quadrature convergence order") {
    // An integrand with nonzero odd derivatives at the ends, so the composite
    // rules show their nominal orders (a full Gaussian converges faster than
    // any power because the boundary corrections vanish).
    auto integral = [](int n, QuadratureRule rule) {
        auto s = build_slice_radial(3.0, 0.25, 1.75, n, rule);
        double val = 0.0;
        for (size_t k = 0; k < s.size(); ++k) val += s.w[k] * std::exp(-2.0 * s.r[k]);
        return val;
    };
    const double exact = integral(8192, QuadratureRule::GaussLegendre2);
    SUBCASE("midpoint is order 2") {
        const double e1 = std::abs(integral(16, QuadratureRule::Midpoint) - exact);
        const double e2 = std::abs(integral(32, QuadratureRule::Midpoint) - exact);
        CHECK(e1 / e2 > 3.5);
        CHECK(e1 / e2 < 4.5);
    }
    SUBCASE("two-point Gauss is order 4") {
        const double e1 = std::abs(integral(16, QuadratureRule::GaussLegendre2) - exact);
        const double e2 = std::abs(integral(32, QuadratureRule::GaussLegendre2) - exact);
        CHECK(e1 / e2 > 10.0);
    }
}

TEST_CASE("region membership") {
    CHECK(Region::lambda_prime().contains({3.0, {1.9, 0, 0}}));
    CHECK_FALSE(Region::lambda_prime().contains({3.0, {2.1, 0, 0}}));
    CHECK(Region::interior_cone().contains({4.0, {1.9, 0, 0}}));
    CHECK(Region::exterior_cone().contains({4.0, {2.1, 0, 0}}));
    CHECK(Region::slab(2.0, 5.0).contains({3.0, {1.0, 0, 0}}));
    CHECK_FALSE(Region::slab(2.0, 5.0).contains({10.0, {2.0, 0, 0}}));
    CHECK_THROWS_AS(Region::slab(5.0, 2.0), std::invalid_argument);
}
