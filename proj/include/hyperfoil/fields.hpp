#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hyperfoil/geometry.hpp"
#include "hyperfoil/jet.hpp"

namespace hyperfoil {

/// The vector fields acting on scalar test functions:
///   D0..D3          coordinate derivatives d_t, d_1..d_3
///   H1..H3          Lorentz boosts H_i = t d_i + x^i d_t
///   Db1..Db3        hyperboloid-tangential derivatives t^{-1} H_i
///   Nd1..Nd3        light-cone-tangential derivatives omega^i d_t + d_i
///   GoodT, GoodX*   (t/r - 1) d_alpha, the remaining cone-adapted family
enum class FieldOp {
    D0, D1, D2, D3,
    H1, H2, H3,
    Db1, Db2, Db3,
    Nd1, Nd2, Nd3,
    GoodT, GoodX1, GoodX2, GoodX3,
};

std::string to_string(FieldOp op);

/// Analytic coefficient function with exact jets, used to scale fields
/// (omega^i, T/t, t/r - 1, coordinates, ...).
using CoeffFn = std::function<Jet(const SpacetimePoint&, int order)>;

namespace coeffs {
CoeffFn one();
CoeffFn constant(double c);
CoeffFn coordinate_t();
CoeffFn coordinate_x(int i);       // i in 0..2
CoeffFn inv_t();
CoeffFn omega(int i);              // x^i / r, needs r > 0
CoeffFn lorentz_ratio();           // T/t = sqrt(t^2-r^2)/t, needs t > r
CoeffFn cone_ratio_minus_one();    // t/r - 1, needs r > 0
CoeffFn radius();                  // r, needs r > 0 for jets of odd order
CoeffFn product(CoeffFn a, CoeffFn b);
}  // namespace coeffs

class FieldImpl;

/// Recorded spatial support of a test function, so region membership can be
/// asserted. Differential operators and coefficient scalings never enlarge
/// support, so the information survives the field algebra.
struct SupportInfo {
    enum class Kind {
        Unbounded,     // analytic tails everywhere (Gaussians, polynomials)
        SpatialBall,   // r <= param at every time
        ConeFraction,  // r <= param * t
        InsideCone,    // r <= t - 1
    };
    Kind kind = Kind::Unbounded;
    double param = 0.0;

    /// Largest radius the support reaches at time t (+inf when unbounded).
    double max_radius_at(double t) const;
    /// True when the support lies inside the region for every t in the range.
    bool inside(const Region& region, double t_lo, double t_hi) const;
};

/// Immutable scalar test function (t, x) -> value carrying exact partial
/// derivatives up to its derivative budget. Value semantics; cheap to copy.
class ScalarField {
public:
    ScalarField() = default;

    double value(const SpacetimePoint& p) const;
    /// Exact truncated Taylor expansion at p. order must not exceed the
    /// remaining derivative budget.
    Jet jet(const SpacetimePoint& p, int order) const;
    int derivative_budget() const;
    const SupportInfo& support() const;

    // --- test-function family -------------------------------------------
    /// A * exp(-a (t-t0)^2 - b |x-x0|^2)
    static ScalarField gaussian_bump(double A, double a, double t0, double b, const Vec3& x0,
                                     int budget = 6);
    /// Polynomial in (t, x): sum of c * t^{e0} x1^{e1} x2^{e2} x3^{e3}.
    struct PolyTerm {
        double c;
        std::array<int, 4> e;
    };
    static ScalarField polynomial(std::vector<PolyTerm> terms, int budget = 6);
    static ScalarField poly_times_bump(std::vector<PolyTerm> terms, double A, double a, double t0,
                                       double b, const Vec3& x0, int budget = 6);
    /// Cone-adapted profile f(t - r) * g(r / t); requires r > 0 at evaluation.
    /// Profiles are Gaussians exp(-a (s - s0)^2).
    static ScalarField cone_profile(double fa, double fs0, double ga, double gs0, int budget = 6);
    /// phi(|x|/t) with phi(s) = (1 - (s/s1)^2)^4 on s < s1, 0 outside; smooth
    /// in x everywhere (polynomial in s^2), C^3 across the seam.
    static ScalarField transported_bump(double s1, int budget = 6);
    /// Compactly supported bump rho(t) * (1 - r^2/(t-1)^2)^4 inside r < t - 1,
    /// rho a Gaussian in t; used for manufactured-solution sources.
    static ScalarField cone_supported_bump(double A, double rho_a, double rho_t0, int budget = 6);
    /// Field from an explicit jet evaluator (escape hatch for tests).
    static ScalarField from_evaluator(std::function<Jet(const SpacetimePoint&, int)> ev,
                                      int budget, SupportInfo support = {});

    // --- algebra ----------------------------------------------------------
    friend ScalarField apply(FieldOp op, const ScalarField& f);
    friend ScalarField coeff_times(CoeffFn c, const ScalarField& f);
    friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
    friend ScalarField operator*(double s, const ScalarField& f);

private:
    explicit ScalarField(std::shared_ptr<const FieldImpl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const FieldImpl> impl_;
};

/// Ordered operator word; the leftmost entry acts last (outermost).
struct MultiIndex {
    std::vector<FieldOp> ops;
    size_t size() const { return ops.size(); }
};

ScalarField apply_multi(const MultiIndex& J, const ScalarField& f);

/// d'Alembertian d_tt - Laplace applied through the operator algebra.
ScalarField box(const ScalarField& f);

// --- frame ----------------------------------------------------------------

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Transition matrices between the natural frame and the light-cone-adapted
/// frame (d_t, nd_1, nd_2, nd_3); phi * psi = identity for every unit omega.
Mat4 frame_phi(const Vec3& omega);
Mat4 frame_psi(const Vec3& omega);

/// Push a contravariant two-tensor into the adapted frame:
/// underline T^{a'b'} = psi_a^{a'} psi_b^{b'} T^{ab}. Requires r > 0.
Mat4 frame_transform_two_tensor(const Mat4& T, const SpacetimePoint& p);
Mat4 frame_transform_two_tensor(const Mat4& T, const Vec3& omega);

}  // namespace hyperfoil
