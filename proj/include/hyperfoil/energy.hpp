#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hyperfoil/fields.hpp"
#include "hyperfoil/geometry.hpp"

namespace hyperfoil {

/// Normalization of the mass term in the hyperboloidal energy:
/// Doubled integrates 2(au)^2 (the definitional form), Half integrates
/// (1/2)(au)^2 (the alternative normalization, switchable in config), and
/// Flux integrates (au)^2 once - the exact flux of the Klein-Gordon current
/// through the hyperboloid, the normalization for which the square-root
/// energy bound actually holds. Inequality margins always use Flux;
/// reported energy columns use the configured convention.
enum class MassConvention { Doubled, Half, Flux };

inline double mass_coefficient(MassConvention mc) {
    switch (mc) {
        case MassConvention::Doubled: return 2.0;
        case MassConvention::Half: return 0.5;
        case MassConvention::Flux: return 1.0;
    }
    return 2.0;
}

/// Pointwise data entering the energy integrands at one node.
struct EnergyNodeState {
    double t = 1.0;
    Vec3 x{0, 0, 0};
    double dt_u = 0.0;
    Vec3 grad_u{0, 0, 0};
    double u = 0.0;
    double mass = 0.0;  // a >= 0
};

/// The three equivalent quadratic integrands of the hyperboloidal energy,
/// evaluated with full 3-vector data, plus the mass term and a magnitude
/// scale for relative comparisons.
struct EmIntegrands {
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    double mass_term = 0.0;
    double scale = 0.0;
};

EmIntegrands em_integrands(const EnergyNodeState& n, MassConvention mc = MassConvention::Doubled);

/// Pointwise tangential-derivative integrand sum |nd_i u|^2 and the massless
/// energy integrand at the same node (the factor-2 comparison pair).
std::pair<double, double> tangential_pointwise_probe(const EnergyNodeState& n);

/// Radial field jet sampled on a hyperboloid slice: values and first
/// derivatives of one component at the slice nodes.
struct FieldJetOnSlice {
    HyperboloidSlice slice;
    std::vector<double> u, ut, ur;
    double mass = 0.0;

    size_t size() const { return slice.size(); }
    /// |db u| at node k (norm over i of the tangential-frame derivative)
    double db_abs(size_t k) const {
        return std::abs(ur[k] + (slice.r[k] / slice.t[k]) * ut[k]);
    }
    /// |nd u| at node k (norm over i of the light-cone tangential derivative)
    double nd_abs(size_t k) const { return std::abs(ut[k] + ur[k]); }
};

/// Sample an analytic field along the radial ray on the slice.
FieldJetOnSlice sample_on_slice(const ScalarField& f, const HyperboloidSlice& s, double mass);

struct EnergyReport {
    double e_expr1 = 0.0, e_expr2 = 0.0, e_expr3 = 0.0;
    double mass_term = 0.0;
    double e_curved = 0.0;  // filled by energy_curved when used
    double spread = 0.0;    // max pairwise relative difference of the 3 expressions
    double value() const { return e_expr2; }
};

/// Hyperboloidal energy through all three displayed expressions; verifies the
/// pointwise integrand identity along the way (max relative deviation goes
/// into `spread`).
EnergyReport energy_em(const FieldJetOnSlice& jet, MassConvention mc = MassConvention::Doubled);

/// integral of sum_i |nd_i u|^2 dx over the slice.
double tangential_energy(const FieldJetOnSlice& jet);

/// Quasilinear coefficients at the slice nodes after radial reduction:
/// G_i^{j a b} with a, b in {0 = t, 1 = r}.
struct GCoefficients {
    int ncomp = 0;
    size_t n_nodes = 0;
    std::vector<double> g;

    GCoefficients() = default;
    GCoefficients(int ncomp_, size_t n_nodes_)
        : ncomp(ncomp_), n_nodes(n_nodes_),
          g(n_nodes_ * static_cast<size_t>(ncomp_) * ncomp_ * 4, 0.0) {}
    size_t idx(size_t k, int i, int j, int a, int b) const {
        return ((k * ncomp + i) * ncomp + j) * 4 + a * 2 + b;
    }
    double at(size_t k, int i, int j, int a, int b) const { return g[idx(k, i, j, a, b)]; }
    double& at(size_t k, int i, int j, int a, int b) { return g[idx(k, i, j, a, b)]; }
    double max_abs() const;
    /// Hyperbolicity symmetry G_i^{j a b} = G_j^{i b a}; throws on violation.
    void validate_symmetry(double tol = 1e-12) const;
};

/// Curved energy per component: E_m plus the two correction integrals with
/// the (1, -x^a/t) flux contraction. Jets must share one slice.
std::vector<double> energy_curved(std::span<const FieldJetOnSlice> jets, const GCoefficients& G,
                                  MassConvention mc = MassConvention::Doubled);

/// Standard (constant-t) flat energy: sum of w * (ut^2 + ur^2).
double energy_standard_flat(std::span<const double> w, std::span<const double> ut,
                            std::span<const double> ur);

/// Margin rows of the square-root energy inequality
/// sqrt(E(T)) <= sqrt(E(T0)) + integral of ||f||_{L2(H_s)} ds.
/// T, E, f_l2 are parallel arrays, T ascending, T[0] the initial slice.
struct InequalityMargin {
    double T = 0.0;
    double lhs_sqrt = 0.0;   // sqrt(E(T))
    double bound_sqrt = 0.0; // sqrt(E(T0)) + integral up to T
    double margin_rel = 0.0; // (bound - lhs)/bound
};

std::vector<InequalityMargin> energy_inequality_margins(std::span<const double> T,
                                                        std::span<const double> E,
                                                        std::span<const double> f_l2);

/// sup_{H_T} t^3 |f|^2 divided by the squared boost-Sobolev norm
/// sum_{|I|<=2} ||H^I f||^2_{L2(H_T, dx)}; boost fields only.
double sobolev_ratio(const ScalarField& f, double T, int n_nodes = 1024);

/// Weighted sups used for decay-rate diagnostics on one slice.
struct DecaySups {
    double sup_u = 0.0;                  // sup |u|
    double hyperboloidal_deriv = 0.0;    // sup t^{3/2} |db u|
    double weighted_partial = 0.0;       // sup t^{3/2} (T/t) max(|d_t u|, |d_r u|)
    double mass_term = 0.0;              // sup t^{3/2} a|u|
    double cone_tangential_ext = 0.0;    // sup over r >= t/2 of t^{3/2} |nd u|
};

DecaySups decay_diagnostic(const FieldJetOnSlice& jet);

}  // namespace hyperfoil
