#include "hyperfoil/identities.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hyperfoil {

namespace {

ScalarField unit_field() { return ScalarField::polynomial({{1.0, {0, 0, 0, 0}}}, 8); }

FieldOp d_op(int alpha) { return static_cast<FieldOp>(static_cast<int>(FieldOp::D0) + alpha); }
FieldOp h_op(int j) { return static_cast<FieldOp>(static_cast<int>(FieldOp::H1) + j); }
FieldOp db_op(int i) { return static_cast<FieldOp>(static_cast<int>(FieldOp::Db1) + i); }
FieldOp nd_op(int i) { return static_cast<FieldOp>(static_cast<int>(FieldOp::Nd1) + i); }
FieldOp good_op(int alpha) {
    return static_cast<FieldOp>(static_cast<int>(FieldOp::GoodT) + alpha);
}

CoeffFn x_over_t(int j) {
    return coeffs::product(coeffs::coordinate_x(j), coeffs::inv_t());
}

// (delta_ij - omega^i omega^j) * mult
CoeffFn delta_minus_omega2(int i, int j, CoeffFn mult) {
    return [i, j, mult](const SpacetimePoint& p, int m) {
        Jet del = Jet::constant(i == j ? 1.0 : 0.0, m);
        del -= coeffs::omega(i)(p, m) * coeffs::omega(j)(p, m);
        return del * mult(p, m);
    };
}

CoeffFn cone_sq_minus_one() {  // (t/r + 1)(t/r - 1) = t^2/r^2 - 1
    return [](const SpacetimePoint& p, int m) {
        Jet tr = coeffs::coordinate_t()(p, m) * coeffs::radius()(p, m).reciprocal();
        return tr * tr - Jet::constant(1.0, m);
    };
}

CoeffFn t_over_r2() {
    return [](const SpacetimePoint& p, int m) {
        return coeffs::coordinate_t()(p, m) * coeffs::radius()(p, m).pow_int(-2);
    };
}

CoeffFn inv_r() {
    return [](const SpacetimePoint& p, int m) { return coeffs::radius()(p, m).reciprocal(); };
}

CoeffFn one_minus_r_over_t() {  // (t - r)/t
    return [](const SpacetimePoint& p, int m) {
        return Jet::constant(1.0, m) -
               coeffs::radius()(p, m) * coeffs::coordinate_t()(p, m).reciprocal();
    };
}

// --- residual builders, one per displayed identity --------------------------

std::vector<ScalarField> res_boost_wave(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int j = 0; j < 3; ++j)
        out.push_back(apply(h_op(j), box(f)) - box(apply(h_op(j), f)));
    return out;
}

std::vector<ScalarField> res_partial_wave(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int a = 0; a < 4; ++a)
        out.push_back(apply(d_op(a), box(f)) - box(apply(d_op(a), f)));
    return out;
}

std::vector<ScalarField> res_boost_dt(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int j = 0; j < 3; ++j) {
        ScalarField lhs = apply(h_op(j), apply(FieldOp::D0, f));
        ScalarField rhs = apply(FieldOp::D0, apply(h_op(j), f)) - apply(d_op(j + 1), f);
        out.push_back(lhs - rhs);
    }
    return out;
}

std::vector<ScalarField> res_boost_di(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            ScalarField lhs = apply(h_op(j), apply(d_op(i + 1), f));
            ScalarField rhs = apply(d_op(i + 1), apply(h_op(j), f));
            if (i == j) rhs = rhs - apply(FieldOp::D0, f);
            out.push_back(lhs - rhs);
        }
    return out;
}

std::vector<ScalarField> res_boost_lorentz_factor(const ScalarField&) {
    // Scalar identity H_j(T/t) = -x^j T / t^2, checked on the unit field.
    std::vector<ScalarField> out;
    ScalarField one = unit_field();
    for (int j = 0; j < 3; ++j) {
        ScalarField lhs = apply(h_op(j), coeff_times(coeffs::lorentz_ratio(), one));
        CoeffFn rhs_c = coeffs::product(coeffs::coordinate_x(j),
                                        coeffs::product(coeffs::lorentz_ratio(), coeffs::inv_t()));
        out.push_back(lhs + coeff_times(rhs_c, one));
    }
    return out;
}

std::vector<ScalarField> res_boost_lorentz_dt(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int j = 0; j < 3; ++j) {
        ScalarField lhs =
            apply(h_op(j), coeff_times(coeffs::lorentz_ratio(), apply(FieldOp::D0, f)));
        ScalarField inner = apply(FieldOp::D0, apply(h_op(j), f)) - apply(d_op(j + 1), f) -
                            coeff_times(x_over_t(j), apply(FieldOp::D0, f));
        out.push_back(lhs - coeff_times(coeffs::lorentz_ratio(), inner));
    }
    return out;
}

std::vector<ScalarField> res_boost_lorentz_di(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            ScalarField lhs =
                apply(h_op(j), coeff_times(coeffs::lorentz_ratio(), apply(d_op(i + 1), f)));
            ScalarField inner = apply(d_op(i + 1), apply(h_op(j), f)) -
                                coeff_times(x_over_t(j), apply(d_op(i + 1), f));
            if (i == j) inner = inner - apply(FieldOp::D0, f);
            out.push_back(lhs - coeff_times(coeffs::lorentz_ratio(), inner));
        }
    return out;
}

std::vector<ScalarField> res_boost_tangential(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            ScalarField lhs = apply(h_op(j), apply(nd_op(i), f));
            ScalarField rhs = apply(nd_op(i), apply(h_op(j), f)) -
                              coeff_times(coeffs::omega(i), apply(nd_op(j), f)) +
                              coeff_times(delta_minus_omega2(i, j, coeffs::cone_ratio_minus_one()),
                                          apply(FieldOp::D0, f));
            out.push_back(lhs - rhs);
        }
    return out;
}

std::vector<ScalarField> res_boost_cone(const ScalarField& f, int alpha_lo, int alpha_hi) {
    std::vector<ScalarField> out;
    for (int j = 0; j < 3; ++j)
        for (int a = alpha_lo; a <= alpha_hi; ++a) {
            ScalarField lhs = apply(h_op(j), apply(good_op(a), f));
            ScalarField rhs =
                coeff_times(coeffs::cone_ratio_minus_one(), apply(d_op(a), apply(h_op(j), f))) -
                coeff_times(coeffs::product(coeffs::omega(j), cone_sq_minus_one()),
                            apply(d_op(a), f));
            if (a == 0)
                rhs = rhs - coeff_times(coeffs::cone_ratio_minus_one(), apply(d_op(j + 1), f));
            else if (a == j + 1)
                rhs = rhs - coeff_times(coeffs::cone_ratio_minus_one(), apply(FieldOp::D0, f));
            out.push_back(lhs - rhs);
        }
    return out;
}

std::vector<ScalarField> res_boost_cone_dt(const ScalarField& f) { return res_boost_cone(f, 0, 0); }
std::vector<ScalarField> res_boost_cone_di(const ScalarField& f) { return res_boost_cone(f, 1, 3); }

std::vector<ScalarField> res_boost_hyperboloidal(const ScalarField& f) {
    // H_j db_i u = db_i H_j u - (x^i/t) db_j u
    std::vector<ScalarField> out;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            ScalarField lhs = apply(h_op(j), apply(db_op(i), f));
            ScalarField rhs = apply(db_op(i), apply(h_op(j), f)) -
                              coeff_times(x_over_t(i), apply(db_op(j), f));
            out.push_back(lhs - rhs);
        }
    return out;
}

std::vector<ScalarField> res_hyperboloidal_def(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int i = 0; i < 3; ++i)
        out.push_back(apply(db_op(i), f) - coeff_times(coeffs::inv_t(), apply(h_op(i), f)));
    return out;
}

std::vector<ScalarField> res_del_tangential_spatial(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            ScalarField lhs = apply(d_op(j + 1), apply(nd_op(i), f));
            ScalarField rhs = coeff_times(delta_minus_omega2(i, j, inv_r()),
                                          apply(FieldOp::D0, f)) +
                              apply(nd_op(i), apply(d_op(j + 1), f));
            out.push_back(lhs - rhs);
        }
    return out;
}

std::vector<ScalarField> res_del_tangential_time(const ScalarField& f) {
    std::vector<ScalarField> out;
    for (int i = 0; i < 3; ++i)
        out.push_back(apply(FieldOp::D0, apply(nd_op(i), f)) -
                      apply(nd_op(i), apply(FieldOp::D0, f)));
    return out;
}

std::vector<ScalarField> res_del_cone_spatial(const ScalarField& f, int alpha_lo, int alpha_hi) {
    // d_j ((t/r-1) d_a u) = -omega^j (t/r^2) d_a u + (t/r-1) d_a d_j u
    std::vector<ScalarField> out;
    for (int j = 0; j < 3; ++j)
        for (int a = alpha_lo; a <= alpha_hi; ++a) {
            ScalarField lhs = apply(d_op(j + 1), apply(good_op(a), f));
            ScalarField rhs =
                coeff_times(coeffs::cone_ratio_minus_one(),
                            apply(d_op(a), apply(d_op(j + 1), f))) -
                coeff_times(coeffs::product(coeffs::omega(j), t_over_r2()), apply(d_op(a), f));
            out.push_back(lhs - rhs);
        }
    return out;
}

std::vector<ScalarField> res_del_cone_time(const ScalarField& f, int alpha_lo, int alpha_hi) {
    // d_t ((t/r-1) d_a u) = (1/r) d_a u + (t/r-1) d_a d_t u
    std::vector<ScalarField> out;
    for (int a = alpha_lo; a <= alpha_hi; ++a) {
        ScalarField lhs = apply(FieldOp::D0, apply(good_op(a), f));
        ScalarField rhs =
            coeff_times(inv_r(), apply(d_op(a), f)) +
            coeff_times(coeffs::cone_ratio_minus_one(), apply(d_op(a), apply(FieldOp::D0, f)));
        out.push_back(lhs - rhs);
    }
    return out;
}

std::vector<ScalarField> res_del_cone_dt_spatial(const ScalarField& f) {
    return res_del_cone_spatial(f, 0, 0);
}
std::vector<ScalarField> res_del_cone_di_spatial(const ScalarField& f) {
    return res_del_cone_spatial(f, 1, 3);
}
std::vector<ScalarField> res_del_cone_dt_time(const ScalarField& f) {
    return res_del_cone_time(f, 0, 0);
}
std::vector<ScalarField> res_del_cone_di_time(const ScalarField& f) {
    return res_del_cone_time(f, 1, 3);
}

std::vector<ScalarField> res_boost_omega(const ScalarField&) {
    // H_j omega^i = (delta_ij - omega^i omega^j) (t/r)
    std::vector<ScalarField> out;
    ScalarField one = unit_field();
    CoeffFn t_over_r = [](const SpacetimePoint& p, int m) {
        return coeffs::coordinate_t()(p, m) * coeffs::radius()(p, m).reciprocal();
    };
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            ScalarField lhs = apply(h_op(j), coeff_times(coeffs::omega(i), one));
            ScalarField rhs = coeff_times(delta_minus_omega2(i, j, t_over_r), one);
            out.push_back(lhs - rhs);
        }
    return out;
}

std::vector<ScalarField> res_tangential_minus_hyperboloidal(const ScalarField& f) {
    // Exact form: (nd_i - db_i) u = omega^i ((t-r)/t) d_t u
    std::vector<ScalarField> out;
    for (int i = 0; i < 3; ++i) {
        ScalarField lhs = apply(nd_op(i), f) - apply(db_op(i), f);
        ScalarField rhs = coeff_times(
            coeffs::product(coeffs::omega(i), one_minus_r_over_t()), apply(FieldOp::D0, f));
        out.push_back(lhs - rhs);
    }
    return out;
}

}  // namespace

const std::vector<IdentitySpec>& commutator_identities() {
    static const std::vector<IdentitySpec> specs = {
        {"boost_wave_commute", "[H_j, box] = 0", false, &res_boost_wave},
        {"partial_wave_commute", "[d_a, box] = 0", false, &res_partial_wave},
        {"boost_dt", "H_j d_t u = d_t H_j u - d_j u", false, &res_boost_dt},
        {"boost_di", "H_j d_i u = d_i H_j u - delta_ij d_t u", false, &res_boost_di},
        {"boost_lorentz_factor", "H_j(T/t) = -x^j T/t^2", false, &res_boost_lorentz_factor},
        {"boost_lorentz_dt", "H_j((T/t) d_t u) expansion", false, &res_boost_lorentz_dt},
        {"boost_lorentz_di", "H_j((T/t) d_i u) expansion", false, &res_boost_lorentz_di},
        {"boost_tangential", "H_j nd_i u expansion", true, &res_boost_tangential},
        {"boost_cone_dt", "H_j((t/r-1) d_t u) expansion", true, &res_boost_cone_dt},
        {"boost_cone_di", "H_j((t/r-1) d_i u) expansion", true, &res_boost_cone_di},
        {"boost_hyperboloidal", "H_j db_i u = db_i H_j u - (x^i/t) db_j u", false,
         &res_boost_hyperboloidal},
        {"hyperboloidal_def", "db_i = t^{-1} H_i", false, &res_hyperboloidal_def},
        {"del_tangential_spatial", "d_j nd_i u expansion", true, &res_del_tangential_spatial},
        {"del_tangential_time", "d_t nd_i = nd_i d_t", true, &res_del_tangential_time},
        {"del_cone_dt_spatial", "d_j((t/r-1) d_t u) expansion", true, &res_del_cone_dt_spatial},
        {"del_cone_dt_time", "d_t((t/r-1) d_t u) expansion", true, &res_del_cone_dt_time},
        {"del_cone_di_spatial", "d_j((t/r-1) d_i u) expansion", true, &res_del_cone_di_spatial},
        {"del_cone_di_time", "d_t((t/r-1) d_i u) expansion", true, &res_del_cone_di_time},
        {"boost_omega", "H_j omega^i = (delta_ij - omega^i omega^j) t/r", true,
         &res_boost_omega},
        {"tangential_minus_hyperboloidal", "(nd_i - db_i) u = omega^i ((t-r)/t) d_t u", true,
         &res_tangential_minus_hyperboloidal},
    };
    return specs;
}

std::vector<SpacetimePoint> sample_slab_points(int n, uint64_t seed, double T1, double T2,
                                               bool exterior_only) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<SpacetimePoint> pts;
    pts.reserve(n);
    const double r_split_frac = 1.0 / std::sqrt(3.0);
    while (static_cast<int>(pts.size()) < n) {
        const double T = T1 + (T2 - T1) * uni(rng);
        if (T <= 1.0) continue;
        const double r_cone = 0.5 * (T * T - 1.0);
        double r_lo = exterior_only ? r_split_frac * T : 0.02 * r_cone;
        r_lo = std::max(r_lo, 1e-3);
        if (r_lo >= r_cone) continue;
        const double r = r_lo + (r_cone - r_lo) * uni(rng);
        const double ct = 2.0 * uni(rng) - 1.0;
        const double ph = 2.0 * 3.14159265358979323846 * uni(rng);
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        const double t = hyperboloid_time(T, r);
        pts.push_back({t, {r * st * std::cos(ph), r * st * std::sin(ph), r * ct}});
    }
    return pts;
}

double check_commutator(const std::string& identity_id, const ScalarField& f,
                        std::span<const SpacetimePoint> pts) {
    for (const auto& spec : commutator_identities()) {
        if (spec.id != identity_id) continue;
        double worst = 0.0;
        auto residual_fields = spec.residuals(f);
        for (const auto& res : residual_fields)
            for (const auto& p : pts) worst = std::max(worst, std::abs(res.value(p)));
        return worst;
    }
    throw std::invalid_argument("unknown identity id: " + identity_id);
}

std::vector<ScalarField> default_test_fields() {
    return {
        ScalarField::gaussian_bump(1.0, 0.15, 4.0, 0.25, {1.2, -0.6, 0.4}),
        ScalarField::gaussian_bump(0.8, 0.08, 6.0, 0.12, {-2.0, 1.0, 2.5}),
        ScalarField::poly_times_bump({{0.5, {1, 0, 0, 0}}, {-0.3, {0, 1, 1, 0}}, {0.2, {0, 0, 0, 2}}},
                                     1.0, 0.1, 5.0, 0.15, {0.5, 1.5, -1.0}),
        ScalarField::cone_profile(0.4, 2.0, 3.0, 0.55),
        ScalarField::cone_profile(0.25, 3.0, 2.0, 0.8),
    };
}

std::vector<IdentityResult> run_commutator_battery(std::span<const ScalarField> fields,
                                                   const BatteryConfig& cfg) {
    std::vector<IdentityResult> results;
    uint64_t salt = 0;
    for (const auto& spec : commutator_identities()) {
        IdentityResult res;
        res.id = spec.id;
        auto pts = sample_slab_points(cfg.points_per_identity, cfg.seed + salt, cfg.T1, cfg.T2,
                                      spec.exterior_only);
        ++salt;
        for (const auto& f : fields)
            res.max_residual = std::max(res.max_residual, check_commutator(spec.id, f, pts));
        res.points = static_cast<int>(pts.size());
        res.pass = res.max_residual < cfg.tolerance;
        results.push_back(std::move(res));
    }
    return results;
}

namespace {

// Enumerate boost words of exact length p (3^p of them).
void boost_words(int p, std::vector<MultiIndex>& out) {
    out.clear();
    int total = 1;
    for (int k = 0; k < p; ++k) total *= 3;
    for (int code = 0; code < total; ++code) {
        MultiIndex m;
        int c = code;
        for (int k = 0; k < p; ++k) {
            m.ops.push_back(h_op(c % 3));
            c /= 3;
        }
        out.push_back(std::move(m));
    }
}

}  // namespace

BoundMeasurement check_commutator_bound(const std::string& inequality_id, const ScalarField& f,
                                        int order, std::span<const SpacetimePoint> pts) {
    if (order < 0 || order > 3) throw std::invalid_argument("bound check supports |I| <= 3");
    BoundMeasurement out;
    if (order == 0) {
        out.measured_C = 0.0;  // H^I is the identity; both sides coincide
        out.combos = 1;
        return out;
    }
    std::vector<MultiIndex> words;
    boost_words(order, words);
    std::vector<MultiIndex> lower_words;  // all strictly shorter words
    for (int p = 0; p < order; ++p) {
        std::vector<MultiIndex> w;
        boost_words(p, w);
        lower_words.insert(lower_words.end(), w.begin(), w.end());
    }

    auto measure = [&](auto&& make_inner, auto&& make_lower_terms) {
        for (const auto& I : words) {
            for (const auto& p : pts) {
                double lhs, first;
                std::tie(lhs, first) = make_inner(I, p);
                double lower = 0.0;
                for (const auto& J : lower_words) lower += make_lower_terms(J, p);
                const double excess = std::abs(lhs) - std::abs(first);
                if (excess <= 0.0) continue;
                if (lower <= 1e-300) {
                    out.finite = false;
                    continue;
                }
                out.measured_C = std::max(out.measured_C, excess / lower);
            }
            ++out.combos;
        }
    };

    if (inequality_id == "H-partial") {
        for (int a = 0; a < 4; ++a) {
            measure(
                [&](const MultiIndex& I, const SpacetimePoint& p) {
                    double lhs = apply_multi(I, apply(d_op(a), f)).value(p);
                    double first = apply(d_op(a), apply_multi(I, f)).value(p);
                    return std::make_pair(lhs, first);
                },
                [&](const MultiIndex& J, const SpacetimePoint& p) {
                    double s = 0.0;
                    for (int b = 0; b < 4; ++b)
                        s += std::abs(apply(d_op(b), apply_multi(J, f)).value(p));
                    return s;
                });
        }
    } else if (inequality_id == "H-T/t") {
        for (int a = 0; a < 4; ++a) {
            measure(
                [&](const MultiIndex& I, const SpacetimePoint& p) {
                    double lhs =
                        apply_multi(I, coeff_times(coeffs::lorentz_ratio(), apply(d_op(a), f)))
                            .value(p);
                    double first = coeff_times(coeffs::lorentz_ratio(),
                                               apply(d_op(a), apply_multi(I, f)))
                                       .value(p);
                    return std::make_pair(lhs, first);
                },
                [&](const MultiIndex& J, const SpacetimePoint& p) {
                    double s = 0.0;
                    for (int b = 0; b < 4; ++b)
                        s += std::abs(coeff_times(coeffs::lorentz_ratio(),
                                                  apply(d_op(b), apply_multi(J, f)))
                                          .value(p));
                    return s;
                });
        }
    } else if (inequality_id == "H-par_b") {
        for (int i = 0; i < 3; ++i) {
            measure(
                [&](const MultiIndex& I, const SpacetimePoint& p) {
                    double lhs = apply_multi(I, apply(db_op(i), f)).value(p);
                    double first = apply(db_op(i), apply_multi(I, f)).value(p);
                    return std::make_pair(lhs, first);
                },
                [&](const MultiIndex& J, const SpacetimePoint& p) {
                    double s = 0.0;
                    for (int b = 0; b < 3; ++b)
                        s += std::abs(apply(db_op(b), apply_multi(J, f)).value(p));
                    return s;
                });
        }
    } else if (inequality_id == "H-tangential") {
        // D_g family: nd_i and (t/r-1) d_alpha; stated on r >= t/2
        std::vector<FieldOp> dg = {FieldOp::Nd1,   FieldOp::Nd2,    FieldOp::Nd3,
                                   FieldOp::GoodT, FieldOp::GoodX1, FieldOp::GoodX2,
                                   FieldOp::GoodX3};
        for (FieldOp g : dg) {
            measure(
                [&](const MultiIndex& I, const SpacetimePoint& p) {
                    double lhs = apply_multi(I, apply(g, f)).value(p);
                    double first = apply(g, apply_multi(I, f)).value(p);
                    return std::make_pair(lhs, first);
                },
                [&](const MultiIndex& J, const SpacetimePoint& p) {
                    double s = 0.0;
                    for (FieldOp y : dg) s += std::abs(apply(y, apply_multi(J, f)).value(p));
                    return s;
                });
        }
    } else {
        throw std::invalid_argument("unknown inequality id: " + inequality_id);
    }
    return out;
}

double near_cone_approximation_deviation(const ScalarField& f,
                                         std::span<const SpacetimePoint> pts) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        ScalarField diff = apply(nd_op(i), f) - apply(db_op(i), f);
        CoeffFn printed = [i](const SpacetimePoint& p, int m) {
            Jet T_over_t = coeffs::lorentz_ratio()(p, m);
            Jet half_om = coeffs::omega(i)(p, m);
            half_om *= 0.5;
            return half_om * T_over_t * T_over_t;
        };
        ScalarField approx = coeff_times(printed, apply(FieldOp::D0, f));
        for (const auto& p : pts)
            worst = std::max(worst, std::abs(diff.value(p) - approx.value(p)));
    }
    return worst;
}

}  // namespace hyperfoil
