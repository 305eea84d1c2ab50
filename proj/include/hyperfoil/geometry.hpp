#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperfoil {

using Vec3 = std::array<double, 3>;

inline double norm3(const Vec3& x) {
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

/// A point of the forward region t > 0 in (t, x) coordinates.
struct SpacetimePoint {
    double t = 0.0;
    Vec3 x{0.0, 0.0, 0.0};

    double r() const { return norm3(x); }
    /// Unit spatial direction x/|x|. Undefined on the axis r = 0.
    Vec3 omega() const {
        double rr = r();
        if (rr <= 0.0) throw std::domain_error("omega undefined at r = 0");
        return {x[0] / rr, x[1] / rr, x[2] / rr};
    }
    static SpacetimePoint radial(double t, double r) { return {t, {r, 0.0, 0.0}}; }
};

/// t coordinate of the point of the hyperboloid t^2 - |x|^2 = T^2 above x.
double hyperboloid_time(double T, const Vec3& x);
double hyperboloid_time(double T, double r);

/// sqrt(t^2 - r^2); requires t > r (point inside the light cone).
double lorentz_radius(const SpacetimePoint& p);

/// Intrinsic area element factor of the hyperboloid through (t, x):
/// d sigma = t^{-1} sqrt(t^2 + |x|^2) dx. Energy quadrature uses the
/// coordinate measure dx; this factor is exposed separately.
double area_element_factor(const SpacetimePoint& p);

enum class RegionKind { LambdaPrime, SlabG, InteriorCone, ExteriorCone };

/// Subsets of the forward cone used throughout: the truncated interior cone
/// {r <= t - 1} (closed), the slab between two Lorentz radii, and the two
/// half-regions split at r = t/2.
struct Region {
    RegionKind kind = RegionKind::LambdaPrime;
    double T1 = 0.0, T2 = 0.0;  // slab bounds, T1 <= T2

    static Region lambda_prime() { return {RegionKind::LambdaPrime, 0, 0}; }
    static Region slab(double T1, double T2);
    static Region interior_cone() { return {RegionKind::InteriorCone, 0, 0}; }
    static Region exterior_cone() { return {RegionKind::ExteriorCone, 0, 0}; }

    bool contains(const SpacetimePoint& p) const;
    std::string name() const;
};

enum class QuadratureRule { Midpoint, GaussLegendre2 };

/// Constant-T surface with radial quadrature nodes. Sum of w_j * g(r_j)
/// approximates the coordinate-measure integral of a spherically symmetric g,
/// i.e. 4 pi * integral of g(r) r^2 dr over the region's radial extent.
struct HyperboloidSlice {
    double T = 0.0;
    Region region;
    std::vector<double> r;  // radial positions
    std::vector<double> t;  // t(r) on the slice
    std::vector<double> w;  // quadrature weights including 4 pi r^2

    size_t size() const { return r.size(); }
};

/// Radial extent [r_lo, r_hi] of H_T intersected with the region.
/// Throws std::domain_error when the intersection is empty (e.g. LambdaPrime
/// with T < 1) or has zero radial measure.
std::array<double, 2> slice_radial_extent(double T, const Region& region);

HyperboloidSlice build_slice(double T, const Region& region, int n_nodes,
                             QuadratureRule rule = QuadratureRule::Midpoint);

/// Slice over an explicit radial interval (used for oracle integrals).
HyperboloidSlice build_slice_radial(double T, double r_lo, double r_hi, int n_nodes,
                                    QuadratureRule rule = QuadratureRule::Midpoint);

/// Result of sampling the t-range bound of a slice region.
struct RegionBoundsReport {
    double t_min = 0.0, t_max = 0.0;       // observed over nodes
    double bound_lo = 0.0, bound_hi = 0.0;  // asserted range
    double worst_violation = 0.0;           // max(bound_lo - t, t - bound_hi), clamped at 0
    bool pass = false;
};

/// Checks the t-range of H_T within the region: T <= t <= T^2 on the
/// truncated cone (T >= 1) and T <= t <= sqrt(2) T on r <= t/2.
RegionBoundsReport region_bounds_check(double T, const Region& region, int n_samples = 512);

}  // namespace hyperfoil
