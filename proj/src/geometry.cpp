#include "hyperfoil/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace hyperfoil {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double hyperboloid_time(double T, double r) {
    if (!(T > 0.0)) throw std::domain_error("hyperboloid_time requires T > 0");
    return std::sqrt(T * T + r * r);
}

double hyperboloid_time(double T, const Vec3& x) { return hyperboloid_time(T, norm3(x)); }

double lorentz_radius(const SpacetimePoint& p) {
    const double r = p.r();
    if (!(p.t > r)) throw std::domain_error("lorentz_radius requires t > r");
    return std::sqrt((p.t - r) * (p.t + r));
}

double area_element_factor(const SpacetimePoint& p) {
    if (!(p.t > 0.0)) throw std::domain_error("area_element_factor requires t > 0");
    const double r = p.r();
    return std::sqrt(p.t * p.t + r * r) / p.t;
}

Region Region::slab(double T1, double T2) {
    if (!(T1 <= T2)) throw std::invalid_argument("slab requires T1 <= T2");
    return {RegionKind::SlabG, T1, T2};
}

bool Region::contains(const SpacetimePoint& p) const {
    const double r = p.r();
    switch (kind) {
        case RegionKind::LambdaPrime:
            return r <= p.t - 1.0;
        case RegionKind::SlabG: {
            if (r > p.t - 1.0 || p.t <= r) return false;
            const double T = std::sqrt((p.t - r) * (p.t + r));
            return T1 <= T && T <= T2;
        }
        case RegionKind::InteriorCone:
            return r <= 0.5 * p.t;
        case RegionKind::ExteriorCone:
            return r >= 0.5 * p.t;
    }
    return false;
}

std::string Region::name() const {
    switch (kind) {
        case RegionKind::LambdaPrime: return "lambda_prime";
        case RegionKind::SlabG: return "slab";
        case RegionKind::InteriorCone: return "interior";
        case RegionKind::ExteriorCone: return "exterior";
    }
    return "?";
}

std::array<double, 2> slice_radial_extent(double T, const Region& region) {
    if (!(T > 0.0)) throw std::domain_error("slice requires T > 0");
    // On H_T: the truncated cone r <= t - 1 becomes r <= (T^2 - 1)/2 and the
    // split r = t/2 becomes r = T/sqrt(3).
    const double r_cone = 0.5 * (T * T - 1.0);
    const double r_split = T / std::sqrt(3.0);
    double lo = 0.0, hi = 0.0;
    switch (region.kind) {
        case RegionKind::LambdaPrime:
            lo = 0.0;
            hi = r_cone;
            break;
        case RegionKind::SlabG:
            if (T < region.T1 || T > region.T2)
                throw std::domain_error("slab does not contain H_T");
            lo = 0.0;
            hi = r_cone;
            break;
        case RegionKind::InteriorCone:
            lo = 0.0;
            hi = r_split;
            break;
        case RegionKind::ExteriorCone:
            lo = r_split;
            hi = r_cone;
            break;
    }
    if (!(hi > lo)) throw std::domain_error("empty slice: H_T does not meet region");
    return {lo, hi};
}

HyperboloidSlice build_slice_radial(double T, double r_lo, double r_hi, int n_nodes,
                                    QuadratureRule rule) {
    if (!(T > 0.0)) throw std::domain_error("slice requires T > 0");
    if (n_nodes < 8) throw std::invalid_argument("slice requires n_nodes >= 8");
    if (!(r_hi > r_lo) || r_lo < 0.0) throw std::domain_error("empty slice: bad radial extent");
    HyperboloidSlice s;
    s.T = T;
    s.r.reserve(n_nodes);
    s.t.reserve(n_nodes);
    s.w.reserve(n_nodes);
    if (rule == QuadratureRule::Midpoint) {
        const double h = (r_hi - r_lo) / n_nodes;
        for (int j = 0; j < n_nodes; ++j) {
            const double rj = r_lo + (j + 0.5) * h;
            s.r.push_back(rj);
            s.t.push_back(hyperboloid_time(T, rj));
            s.w.push_back(4.0 * kPi * rj * rj * h);
        }
    } else {
        const int panels = std::max(1, n_nodes / 2);
        const double h = (r_hi - r_lo) / panels;
        const double a = 0.5 / std::sqrt(3.0);
        for (int p = 0; p < panels; ++p) {
            const double mid = r_lo + (p + 0.5) * h;
            for (double off : {-a * h, a * h}) {
                const double rj = mid + off;
                s.r.push_back(rj);
                s.t.push_back(hyperboloid_time(T, rj));
                s.w.push_back(4.0 * kPi * rj * rj * 0.5 * h);
            }
        }
    }
    return s;
}

HyperboloidSlice build_slice(double T, const Region& region, int n_nodes, QuadratureRule rule) {
    const auto ext = slice_radial_extent(T, region);
    HyperboloidSlice s = build_slice_radial(T, ext[0], ext[1], n_nodes, rule);
    s.region = region;
    return s;
}

RegionBoundsReport region_bounds_check(double T, const Region& region, int n_samples) {
    RegionBoundsReport rep;
    switch (region.kind) {
        case RegionKind::LambdaPrime:
            if (!(T >= 1.0)) throw std::domain_error("cone bound stated for T >= 1");
            rep.bound_lo = T;
            rep.bound_hi = T * T;
            break;
        case RegionKind::InteriorCone:
            rep.bound_lo = T;
            rep.bound_hi = std::sqrt(2.0) * T;
            break;
        default:
            throw std::invalid_argument("bounds check supports lambda_prime and interior only");
    }
    if (region.kind == RegionKind::LambdaPrime && T == 1.0) {
        // Degenerate slice: the vertex alone, t = T = T^2.
        rep.t_min = rep.t_max = T;
        rep.worst_violation = 0.0;
        rep.pass = true;
        return rep;
    }
    HyperboloidSlice s = build_slice(T, region, n_samples);
    rep.t_min = *std::min_element(s.t.begin(), s.t.end());
    rep.t_max = *std::max_element(s.t.begin(), s.t.end());
    rep.worst_violation =
        std::max(0.0, std::max(rep.bound_lo - rep.t_min, rep.t_max - rep.bound_hi));
    rep.pass = rep.worst_violation <= 1e-12 * std::max(1.0, rep.bound_hi);
    return rep;
}

}  // namespace hyperfoil
