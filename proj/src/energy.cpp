#include "hyperfoil/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperfoil {

EmIntegrands em_integrands(const EnergyNodeState& n, MassConvention mc) {
    const double a0 = n.dt_u;
    const Vec3& b = n.grad_u;
    const double t = n.t;
    const double r = norm3(n.x);
    if (!(t > r)) throw std::domain_error("energy integrand needs t > r");
    const double T2 = (t - r) * (t + r);
    const double xb = n.x[0] * b[0] + n.x[1] * b[1] + n.x[2] * b[2];
    const double b2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];

    EmIntegrands out;
    out.mass_term = mass_coefficient(mc) * n.mass * n.mass * n.u * n.u;
    out.e1 = a0 * a0 + b2 + 2.0 * (xb / t) * a0 + out.mass_term;

    double sum_db = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double dbi = b[i] + (n.x[i] / t) * a0;
        sum_db += dbi * dbi;
    }
    out.e2 = out.mass_term + sum_db + (T2 / (t * t)) * a0 * a0;

    // Third expression needs omega; at r = 0 its limit is the same by
    // continuity (sum over i of omega^i omega^i = 1 for any direction).
    double expr3 = out.mass_term + (T2 / (t * t)) * b2;
    if (r > 0.0) {
        for (int i = 0; i < 3; ++i) {
            const double v = (r / t) * b[i] + (n.x[i] / r) * a0;
            expr3 += v * v;
        }
    } else {
        expr3 += a0 * a0;
    }
    out.e3 = expr3;
    out.scale = a0 * a0 + b2 + out.mass_term + 1e-300;
    return out;
}

std::pair<double, double> tangential_pointwise_probe(const EnergyNodeState& n) {
    const double a0 = n.dt_u;
    const Vec3& b = n.grad_u;
    const double r = norm3(n.x);
    const double t = n.t;
    double nd = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double v = (r > 0 ? n.x[i] / r : 0.0) * a0 + b[i];
        nd += v * v;
    }
    const double xb = n.x[0] * b[0] + n.x[1] * b[1] + n.x[2] * b[2];
    const double b2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    const double em = a0 * a0 + b2 + 2.0 * (xb / t) * a0;
    return {nd, em};
}

FieldJetOnSlice sample_on_slice(const ScalarField& f, const HyperboloidSlice& s, double mass) {
    FieldJetOnSlice out;
    out.slice = s;
    out.mass = mass;
    const size_t n = s.size();
    out.u.resize(n);
    out.ut.resize(n);
    out.ur.resize(n);
    for (size_t k = 0; k < n; ++k) {
        SpacetimePoint p = SpacetimePoint::radial(s.t[k], s.r[k]);
        Jet j = f.jet(p, 1);
        out.u[k] = j.value();
        out.ut[k] = j.deriv1(0);
        out.ur[k] = j.deriv1(1);
    }
    return out;
}

EnergyReport energy_em(const FieldJetOnSlice& jet, MassConvention mc) {
    EnergyReport rep;
    double worst_rel = 0.0;
    const auto& s = jet.slice;
    for (size_t k = 0; k < jet.size(); ++k) {
        EnergyNodeState n;
        n.t = s.t[k];
        n.x = {s.r[k], 0.0, 0.0};
        n.dt_u = jet.ut[k];
        n.grad_u = {jet.ur[k], 0.0, 0.0};
        n.u = jet.u[k];
        n.mass = jet.mass;
        EmIntegrands e = em_integrands(n, mc);
        const double w = s.w[k];
        rep.e_expr1 += w * e.e1;
        rep.e_expr2 += w * e.e2;
        rep.e_expr3 += w * e.e3;
        rep.mass_term += w * e.mass_term;
        const double dev = std::max({std::abs(e.e1 - e.e2), std::abs(e.e1 - e.e3),
                                     std::abs(e.e2 - e.e3)});
        worst_rel = std::max(worst_rel, dev / e.scale);
    }
    if (worst_rel > 1e-10)
        throw std::logic_error("energy integrand identity violated at a node");
    const double emax = std::max({std::abs(rep.e_expr1), std::abs(rep.e_expr2),
                                  std::abs(rep.e_expr3), 1e-300});
    rep.spread = std::max({std::abs(rep.e_expr1 - rep.e_expr2),
                           std::abs(rep.e_expr1 - rep.e_expr3),
                           std::abs(rep.e_expr2 - rep.e_expr3)}) /
                 emax;
    return rep;
}

double tangential_energy(const FieldJetOnSlice& jet) {
    double total = 0.0;
    double skipped_weight = 0.0;
    for (size_t k = 0; k < jet.size(); ++k) {
        if (jet.slice.r[k] <= 0.0) {  // axis node: push its weight outward
            skipped_weight += jet.slice.w[k];
            continue;
        }
        const double nd = jet.nd_abs(k);
        total += (jet.slice.w[k] + skipped_weight) * nd * nd;
        skipped_weight = 0.0;
    }
    return total;
}

double GCoefficients::max_abs() const {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
}

void GCoefficients::validate_symmetry(double tol) const {
    for (size_t k = 0; k < n_nodes; ++k)
        for (int i = 0; i < ncomp; ++i)
            for (int j = 0; j < ncomp; ++j)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        const double d = std::abs(at(k, i, j, a, b) - at(k, j, i, b, a));
                        if (d > tol * std::max(1.0, max_abs()))
                            throw std::invalid_argument(
                                "asymmetric quasilinear coefficients rejected");
                    }
}

std::vector<double> energy_curved(std::span<const FieldJetOnSlice> jets, const GCoefficients& G,
                                  MassConvention mc) {
    if (jets.empty()) return {};
    const size_t n = jets[0].size();
    const int nc = static_cast<int>(jets.size());
    if (G.ncomp != nc || G.n_nodes != n)
        throw std::invalid_argument("G coefficients do not match jets");
    G.validate_symmetry();
    std::vector<double> out(nc, 0.0);
    for (int i = 0; i < nc; ++i) out[i] = energy_em(jets[i], mc).value();

    const auto& s = jets[0].slice;
    for (size_t k = 0; k < n; ++k) {
        const double rt = s.r[k] / s.t[k];
        const double w = s.w[k];
        for (int i = 0; i < nc; ++i) {
            double corr = 0.0;
            const double dti = jets[i].ut[k];
            const double dri = jets[i].ur[k];
            for (int j = 0; j < nc; ++j) {
                const double db[2] = {jets[j].ut[k], jets[j].ur[k]};
                for (int b = 0; b < 2; ++b) {
                    // 2 * d_t w_i d_b w_j (G^{0b} - (r/t) G^{1b})
                    corr += 2.0 * dti * db[b] *
                            (G.at(k, i, j, 0, b) - rt * G.at(k, i, j, 1, b));
                }
                const double da[2] = {dti, dri};
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        corr -= da[a] * db[b] * G.at(k, i, j, a, b);
            }
            out[i] += w * corr;
        }
    }
    return out;
}

double energy_standard_flat(std::span<const double> w, std::span<const double> ut,
                            std::span<const double> ur) {
    double total = 0.0;
    for (size_t k = 0; k < w.size(); ++k) total += w[k] * (ut[k] * ut[k] + ur[k] * ur[k]);
    return total;
}

std::vector<InequalityMargin> energy_inequality_margins(std::span<const double> T,
                                                        std::span<const double> E,
                                                        std::span<const double> f_l2) {
    if (T.size() != E.size() || T.size() != f_l2.size() || T.size() < 2)
        throw std::invalid_argument("margin arrays must be parallel, length >= 2");
    for (size_t k = 1; k < T.size(); ++k)
        if (!(T[k] > T[k - 1]))
            throw std::invalid_argument("margin radii must be strictly ascending");
    std::vector<InequalityMargin> out;
    const double e0 = std::sqrt(std::max(0.0, E[0]));
    double integral = 0.0;
    for (size_t k = 1; k < T.size(); ++k) {
        integral += 0.5 * (f_l2[k] + f_l2[k - 1]) * (T[k] - T[k - 1]);
        InequalityMargin m;
        m.T = T[k];
        m.lhs_sqrt = std::sqrt(std::max(0.0, E[k]));
        m.bound_sqrt = e0 + integral;
        m.margin_rel = (m.bound_sqrt - m.lhs_sqrt) / std::max(m.bound_sqrt, 1e-300);
        out.push_back(m);
    }
    return out;
}

double sobolev_ratio(const ScalarField& f, double T, int n_nodes) {
    HyperboloidSlice s = build_slice(T, Region::lambda_prime(), n_nodes);
    double sup = 0.0;
    for (size_t k = 0; k < s.size(); ++k) {
        const double v = f.value(SpacetimePoint::radial(s.t[k], s.r[k]));
        sup = std::max(sup, s.t[k] * s.t[k] * s.t[k] * v * v);
    }
    // Boost-only Sobolev norm: all ordered boost words of length <= 2.
    std::vector<MultiIndex> words;
    words.push_back({});
    for (int i = 0; i < 3; ++i) words.push_back({{static_cast<FieldOp>(static_cast<int>(FieldOp::H1) + i)}});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            words.push_back({{static_cast<FieldOp>(static_cast<int>(FieldOp::H1) + i),
                              static_cast<FieldOp>(static_cast<int>(FieldOp::H1) + j)}});
    std::vector<ScalarField> hf;
    hf.reserve(words.size());
    for (const auto& wrd : words) hf.push_back(apply_multi(wrd, f));
    double norm2 = 0.0;
    for (size_t k = 0; k < s.size(); ++k) {
        const SpacetimePoint p = SpacetimePoint::radial(s.t[k], s.r[k]);
        double loc = 0.0;
        for (const auto& g : hf) {
            const double v = g.value(p);
            loc += v * v;
        }
        norm2 += s.w[k] * loc;
    }
    if (norm2 <= 0.0) {
        if (sup == 0.0) return 0.0;
        throw std::domain_error("zero Sobolev norm with nonzero sup");
    }
    return sup / norm2;
}

DecaySups decay_diagnostic(const FieldJetOnSlice& jet) {
    DecaySups out;
    const auto& s = jet.slice;
    for (size_t k = 0; k < jet.size(); ++k) {
        const double t = s.t[k];
        const double w32 = std::pow(t, 1.5);
        const double Tt = s.T / t;
        out.sup_u = std::max(out.sup_u, std::abs(jet.u[k]));
        out.hyperboloidal_deriv = std::max(out.hyperboloidal_deriv, w32 * jet.db_abs(k));
        out.weighted_partial = std::max(
            out.weighted_partial, w32 * Tt * std::max(std::abs(jet.ut[k]), std::abs(jet.ur[k])));
        out.mass_term = std::max(out.mass_term, w32 * jet.mass * std::abs(jet.u[k]));
        if (s.r[k] >= 0.5 * t)
            out.cone_tangential_ext = std::max(out.cone_tangential_ext, w32 * jet.nd_abs(k));
    }
    return out;
}

}  // namespace hyperfoil
