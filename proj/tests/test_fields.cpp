#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperfoil/fields.hpp"
#include "hyperfoil/identities.hpp"

using namespace hyperfoil;

namespace {

// Central-difference oracle for first partials of a composite field value.
double fd_partial(const ScalarField& f, const SpacetimePoint& p, int var, double h = 1e-4) {
    auto shift = [&](double s) {
        SpacetimePoint q = p;
        if (var == 0)
            q.t += s;
        else
            q.x[var - 1] += s;
        return f.value(q);
    };
    return (shift(h) - shift(-h)) / (2.0 * h);
}

const SpacetimePoint kP{5.0, {1.2, -0.7, 2.1}};

}  // namespace

TEST_CASE("jet derivatives match finite differences") {
    auto f = ScalarField::gaussian_bump(1.3, 0.2, 4.0, 0.3, {0.5, -1.0, 1.0});
    Jet j = f.jet(kP, 2);
    for (int v = 0; v < 4; ++v)
        CHECK(j.deriv1(v) == doctest::Approx(fd_partial(f, kP, v)).epsilon(1e-7));
    // second derivative d_t d_1 against nested differencing
    auto d1 = apply(FieldOp::D1, f);
    CHECK(d1.jet(kP, 1).deriv1(0) == doctest::Approx(fd_partial(d1, kP, 0)).epsilon(1e-6));
}

TEST_CASE("boost on coordinate fields") {
    auto t_field = ScalarField::polynomial({{1.0, {1, 0, 0, 0}}});
    auto x1_field = ScalarField::polynomial({{1.0, {0, 1, 0, 0}}});
    CHECK(apply(FieldOp::H1, t_field).value(kP) == doctest::Approx(kP.x[0]));
    CHECK(apply(FieldOp::H1, x1_field).value(kP) == doctest::Approx(kP.t));
}

TEST_CASE("db equals boost over t") {
    auto f = ScalarField::gaussian_bump(1.0, 0.15, 5.0, 0.2, {1.0, 0.5, -0.5});
    auto pts = sample_slab_points(20, 7, 2.0, 8.0, false);
    for (const auto& p : pts) {
        const double lhs = apply(FieldOp::Db2, f).value(p);
        const double rhs = apply(FieldOp::H2, f).value(p) / p.t;
        CHECK(std::abs(lhs - rhs) < 1e-13 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("multi-index composition") {
    auto f = ScalarField::gaussian_bump(1.0, 0.2, 4.5, 0.25, {0.8, -0.2, 0.6});
    SUBCASE("empty word is the identity") {
        CHECK(apply_multi({}, f).value(kP) == doctest::Approx(f.value(kP)));
    }
    SUBCASE("order matters by the commutator") {
        // (H1 d_t - d_t H1) f = -d_1 f
        auto ab = apply_multi({{FieldOp::H1, FieldOp::D0}}, f);
        auto ba = apply_multi({{FieldOp::D0, FieldOp::H1}}, f);
        auto d1 = apply(FieldOp::D1, f);
        auto pts = sample_slab_points(20, 3, 2.0, 9.0, false);
        for (const auto& p : pts)
            CHECK(ab.value(p) - ba.value(p) == doctest::Approx(-d1.value(p)).epsilon(1e-10));
    }
    SUBCASE("length-3 words stay exact vs finite differences") {
        auto w = apply_multi({{FieldOp::H2, FieldOp::H1}}, f);
        auto pts = sample_slab_points(5, 11, 2.0, 6.0, false);
        for (const auto& p : pts)
            CHECK(fd_partial(w, p, 0) ==
                  doctest::Approx(apply(FieldOp::D0, w).value(p)).epsilon(1e-5));
    }
    SUBCASE("associativity of word application") {
        auto lhs = apply_multi({{FieldOp::H1, FieldOp::D2, FieldOp::H3}}, f);
        auto rhs = apply(FieldOp::H1, apply_multi({{FieldOp::D2, FieldOp::H3}}, f));
        auto pts = sample_slab_points(10, 13, 2.0, 6.0, false);
        for (const auto& p : pts)
            CHECK(lhs.value(p) == doctest::Approx(rhs.value(p)).epsilon(1e-12));
    }
}

TEST_CASE("derivative budget is enforced") {
    auto f = ScalarField::gaussian_bump(1.0, 0.2, 4.0, 0.3, {0, 0, 0}, 2);
    auto g = apply(FieldOp::D0, apply(FieldOp::D1, f));
    CHECK_NOTHROW(g.value(kP));
    CHECK_THROWS_AS(apply(FieldOp::D2, g), std::domain_error);
    CHECK_THROWS_AS(apply_multi({{FieldOp::H1, FieldOp::H2, FieldOp::H3}}, f),
                    std::domain_error);
}

TEST_CASE("omega operators fail on the axis") {
    auto f = ScalarField::gaussian_bump(1.0, 0.2, 4.0, 0.3, {0, 0, 0});
    SpacetimePoint axis{4.0, {0, 0, 0}};
    CHECK_THROWS_AS(apply(FieldOp::Nd1, f).value(axis), std::domain_error);
    CHECK_THROWS_AS(apply(FieldOp::GoodT, f).value(axis), std::domain_error);
    CHECK_NOTHROW(apply(FieldOp::Db1, f).value(axis));
}

TEST_CASE("commutator battery passes at 1e-10") {
    auto fields = default_test_fields();
    BatteryConfig cfg;
    cfg.points_per_identity = 40;  // acceptance runs the full 100
    auto results = run_commutator_battery(fields, cfg);
    CHECK(results.size() >= 12);
    for (const auto& r : results) {
        INFO(r.id, " residual ", r.max_residual);
        CHECK(r.pass);
    }
}

TEST_CASE("single identity checks") {
    auto f = ScalarField::gaussian_bump(1.0, 0.15, 4.0, 0.25, {1.2, -0.6, 0.4});
    SUBCASE("[H_j, box] on a gaussian in the slab") {
        auto pts = sample_slab_points(50, 17, 2.0, 10.0, false);
        CHECK(check_commutator("boost_wave_commute", f, pts) < 1e-10);
    }
    SUBCASE("H(T/t) closed form") {
        auto pts = sample_slab_points(50, 19, 2.0, 10.0, false);
        CHECK(check_commutator("boost_lorentz_factor", f, pts) < 1e-12);
    }
    SUBCASE("d_t and nd commute") {
        auto pts = sample_slab_points(50, 23, 2.0, 10.0, true);
        CHECK(check_commutator("del_tangential_time", f, pts) < 1e-12);
    }
    CHECK_THROWS_AS(check_commutator("no_such_identity", f, {}), std::invalid_argument);
}

TEST_CASE("measured commutator constants") {
    auto f = ScalarField::gaussian_bump(1.0, 0.15, 4.0, 0.25, {1.2, -0.6, 0.4});
    auto pts = sample_slab_points(25, 29, 2.0, 8.0, true);
    SUBCASE("|I| = 0 is an equality") {
        auto m = check_commutator_bound("H-partial", f, 0, pts);
        CHECK(m.measured_C == doctest::Approx(0.0));
    }
    SUBCASE("|I| = 1 needs only a unit constant") {
        auto m = check_commutator_bound("H-partial", f, 1, pts);
        CHECK(m.finite);
        CHECK(m.measured_C <= 1.0 + 1e-9);
    }
    SUBCASE("cone-adapted family bound is finite on the exterior") {
        auto m = check_commutator_bound("H-tangential", f, 1, pts);
        CHECK(m.finite);
        CHECK(m.measured_C < 50.0);
        // staying farther from r = t/2 does not increase the constant
        auto far = sample_slab_points(200, 29, 2.0, 8.0, true);
        std::vector<SpacetimePoint> deep;
        for (const auto& p : far)
            if (p.r() >= 0.7 * p.t) deep.push_back(p);
        REQUIRE(deep.size() >= 10);
        auto m2 = check_commutator_bound("H-tangential", f, 1, deep);
        CHECK(m2.measured_C <= m.measured_C + 1e-9);
    }
    SUBCASE("|I| = 2 boost words") {
        auto m = check_commutator_bound("H-T/t", f, 2, pts);
        CHECK(m.finite);
        CHECK(m.combos == 9 * 4);
    }
}

TEST_CASE("frame matrices") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Vec3 w{uni(rng), uni(rng), uni(rng)};
        const double n = norm3(w);
        if (n < 1e-3) continue;
        for (auto& c : w) c /= n;
        const Mat4 phi = frame_phi(w), psi = frame_psi(w);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += phi[i][k] * psi[k][j];
                CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-14);
            }
    }
}

TEST_CASE("two-tensor frame transform") {
    const Vec3 w{0.48, -0.6, 0.64};  // unit
    SUBCASE("zero maps to zero") {
        Mat4 zero{};
        auto out = frame_transform_two_tensor(zero, w);
        for (const auto& row : out)
            for (double v : row) CHECK(v == 0.0);
    }
    SUBCASE("transform then inverse-transform recovers the tensor") {
        Mat4 T{};
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (auto& row : T)
            for (double& v : row) v = uni(rng);
        const Mat4 under = frame_transform_two_tensor(T, w);
        // invert with phi: T^{ab} = phi_a'^a phi_b'^b underline T^{a'b'}
        const Mat4 phi = frame_phi(w);
        Mat4 back{};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double s = 0.0;
                for (int ap = 0; ap < 4; ++ap)
                    for (int bp = 0; bp < 4; ++bp)
                        s += phi[ap][a] * phi[bp][b] * under[ap][bp];
                back[a][b] = s;
            }
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) CHECK(std::abs(back[a][b] - T[a][b]) < 1e-14);
    }
    SUBCASE("Minkowski form has vanishing underline 00 component") {
        Mat4 P{};
        P[0][0] = 1.0;
        for (int i = 1; i < 4; ++i) P[i][i] = -1.0;
        const Mat4 under = frame_transform_two_tensor(P, w);
        CHECK(std::abs(under[0][0]) < 1e-14);
    }
    SUBCASE("axis point is rejected") {
        Mat4 P{};
        CHECK_THROWS_AS(frame_transform_two_tensor(P, SpacetimePoint{2.0, {0, 0, 0}}),
                        std::domain_error);
    }
}

TEST_CASE("support is recorded and survives the operator algebra") {
    auto bump = ScalarField::transported_bump(0.45);
    CHECK(bump.support().kind == SupportInfo::Kind::ConeFraction);
    CHECK(bump.support().inside(Region::lambda_prime(), 4.0, 100.0));
    // 0.45 t > t - 1 for t < 1/(1 - 0.45)
    CHECK_FALSE(bump.support().inside(Region::lambda_prime(), 1.5, 2.0));
    CHECK(apply(FieldOp::H1, bump).support().kind == SupportInfo::Kind::ConeFraction);
    CHECK(box(bump).support().inside(Region::lambda_prime(), 4.0, 100.0));

    auto cone = ScalarField::cone_supported_bump(1.0, 0.25, 6.0);
    CHECK(cone.support().inside(Region::lambda_prime(), 3.0, 1e6));

    auto gauss = ScalarField::gaussian_bump(1.0, 0.2, 4.0, 0.3, {0, 0, 0});
    CHECK(gauss.support().kind == SupportInfo::Kind::Unbounded);
    CHECK_FALSE(gauss.support().inside(Region::lambda_prime(), 4.0, 8.0));
    CHECK((bump + gauss).support().kind == SupportInfo::Kind::Unbounded);

    // value vanishes at the recorded support edge
    const double t = 7.0;
    const double edge = bump.support().max_radius_at(t);
    CHECK(bump.value({t, {edge + 0.01, 0, 0}}) == 0.0);
    CHECK(bump.value({t, {edge - 0.2, 0, 0}}) != 0.0);
}

TEST_CASE("near-cone approximate factor deviates but exact form holds") {
    auto f = ScalarField::gaussian_bump(1.0, 0.15, 4.0, 0.25, {1.2, -0.6, 0.4});
    auto pts = sample_slab_points(50, 31, 2.0, 8.0, true);
    CHECK(check_commutator("tangential_minus_hyperboloidal", f, pts) < 1e-11);
    CHECK(near_cone_approximation_deviation(f, pts) >= 0.0);
}
