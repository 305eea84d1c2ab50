#include "hyperfoil/fields.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

namespace hyperfoil {

namespace {

Jet jet_t(const SpacetimePoint& p, int m) { return Jet::variable(p.t, 0, m); }
Jet jet_x(const SpacetimePoint& p, int i, int m) { return Jet::variable(p.x[i], i + 1, m); }

Jet jet_r2(const SpacetimePoint& p, int m) {
    Jet r2(m);
    for (int i = 0; i < 3; ++i) {
        Jet xi = jet_x(p, i, m);
        r2 += xi * xi;
    }
    return r2;
}

Jet jet_r(const SpacetimePoint& p, int m) {
    if (p.r() <= 0.0) throw std::domain_error("radius jet undefined at r = 0");
    return jet_r2(p, m).sqrt_();
}

}  // namespace

namespace coeffs {

CoeffFn one() {
    return [](const SpacetimePoint&, int m) { return Jet::constant(1.0, m); };
}

CoeffFn constant(double c) {
    return [c](const SpacetimePoint&, int m) { return Jet::constant(c, m); };
}

CoeffFn coordinate_t() {
    return [](const SpacetimePoint& p, int m) { return jet_t(p, m); };
}

CoeffFn coordinate_x(int i) {
    return [i](const SpacetimePoint& p, int m) { return jet_x(p, i, m); };
}

CoeffFn inv_t() {
    return [](const SpacetimePoint& p, int m) { return jet_t(p, m).reciprocal(); };
}

CoeffFn omega(int i) {
    return [i](const SpacetimePoint& p, int m) {
        return jet_x(p, i, m) * jet_r(p, m).reciprocal();
    };
}

CoeffFn lorentz_ratio() {
    return [](const SpacetimePoint& p, int m) {
        if (!(p.t > p.r())) throw std::domain_error("T/t undefined outside the cone");
        Jet t = jet_t(p, m);
        Jet T = (t * t - jet_r2(p, m)).sqrt_();
        return T * t.reciprocal();
    };
}

CoeffFn cone_ratio_minus_one() {
    return [](const SpacetimePoint& p, int m) {
        Jet q = jet_t(p, m) * jet_r(p, m).reciprocal();
        q -= Jet::constant(1.0, m);
        return q;
    };
}

CoeffFn radius() {
    return [](const SpacetimePoint& p, int m) { return jet_r(p, m); };
}

CoeffFn product(CoeffFn a, CoeffFn b) {
    return [a = std::move(a), b = std::move(b)](const SpacetimePoint& p, int m) {
        return a(p, m) * b(p, m);
    };
}

}  // namespace coeffs

// --- support tracking --------------------------------------------------------

double SupportInfo::max_radius_at(double t) const {
    switch (kind) {
        case Kind::Unbounded: return std::numeric_limits<double>::infinity();
        case Kind::SpatialBall: return param;
        case Kind::ConeFraction: return param * t;
        case Kind::InsideCone: return t - 1.0;
    }
    return std::numeric_limits<double>::infinity();
}

bool SupportInfo::inside(const Region& region, double t_lo, double t_hi) const {
    // Support radii and the region boundaries are affine in t, so checking
    // the axis and the outer support edge at both endpoint times suffices.
    for (double t : {t_lo, t_hi}) {
        const double rmax = max_radius_at(t);
        if (!std::isfinite(rmax)) return false;
        if (!region.contains({t, {0.0, 0.0, 0.0}})) return false;
        if (rmax > 0.0 && !region.contains({t, {rmax, 0.0, 0.0}})) return false;
    }
    return true;
}

namespace {

SupportInfo support_join(const SupportInfo& a, const SupportInfo& b) {
    if (a.kind == b.kind) return {a.kind, std::max(a.param, b.param)};
    return {};  // mixed kinds: fall back to unbounded (conservative)
}

}  // namespace

// --- field implementation DAG ----------------------------------------------

using Memo = std::map<std::pair<const FieldImpl*, int>, Jet>;

class FieldImpl {
public:
    explicit FieldImpl(int budget, SupportInfo support = {})
        : budget_(budget), support_(support) {}
    virtual ~FieldImpl() = default;
    int budget() const { return budget_; }
    const SupportInfo& support() const { return support_; }

    Jet jet(const SpacetimePoint& p, int order, Memo& memo) const {
        if (order > budget_)
            throw std::domain_error("derivative budget exhausted (order " +
                                    std::to_string(order) + " > budget " +
                                    std::to_string(budget_) + ")");
        auto key = std::make_pair(static_cast<const FieldImpl*>(this), order);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Jet j = eval(p, order, memo);
        memo.emplace(key, j);
        return j;
    }

protected:
    virtual Jet eval(const SpacetimePoint& p, int order, Memo& memo) const = 0;
    int budget_;
    SupportInfo support_;
};

namespace {

class BaseField final : public FieldImpl {
public:
    BaseField(std::function<Jet(const SpacetimePoint&, int)> ev, int budget,
              SupportInfo support = {})
        : FieldImpl(budget, support), ev_(std::move(ev)) {}

protected:
    Jet eval(const SpacetimePoint& p, int order, Memo&) const override { return ev_(p, order); }
    std::function<Jet(const SpacetimePoint&, int)> ev_;
};

class DerivField final : public FieldImpl {
public:
    DerivField(int var, std::shared_ptr<const FieldImpl> f)
        : FieldImpl(f->budget() - 1, f->support()), var_(var), f_(std::move(f)) {}

protected:
    Jet eval(const SpacetimePoint& p, int order, Memo& memo) const override {
        return f_->jet(p, order + 1, memo).derivative(var_);
    }
    int var_;
    std::shared_ptr<const FieldImpl> f_;
};

class CoeffProductField final : public FieldImpl {
public:
    CoeffProductField(CoeffFn c, std::shared_ptr<const FieldImpl> f)
        : FieldImpl(f->budget(), f->support()), c_(std::move(c)), f_(std::move(f)) {}

protected:
    Jet eval(const SpacetimePoint& p, int order, Memo& memo) const override {
        return c_(p, order) * f_->jet(p, order, memo);
    }
    CoeffFn c_;
    std::shared_ptr<const FieldImpl> f_;
};

class LinCombField final : public FieldImpl {
public:
    LinCombField(std::vector<std::pair<double, std::shared_ptr<const FieldImpl>>> terms,
                 int budget)
        : FieldImpl(budget), terms_(std::move(terms)) {
        if (!terms_.empty()) {
            support_ = terms_.front().second->support();
            for (size_t k = 1; k < terms_.size(); ++k)
                support_ = support_join(support_, terms_[k].second->support());
        }
    }

protected:
    Jet eval(const SpacetimePoint& p, int order, Memo& memo) const override {
        Jet out(order);
        for (const auto& [s, f] : terms_) {
            Jet j = f->jet(p, order, memo);
            j *= s;
            out += j;
        }
        return out;
    }
    std::vector<std::pair<double, std::shared_ptr<const FieldImpl>>> terms_;
};

}  // namespace

// --- ScalarField -------------------------------------------------------------

double ScalarField::value(const SpacetimePoint& p) const { return jet(p, 0).value(); }

Jet ScalarField::jet(const SpacetimePoint& p, int order) const {
    if (!impl_) throw std::logic_error("empty ScalarField");
    Memo memo;
    return impl_->jet(p, order, memo);
}

int ScalarField::derivative_budget() const { return impl_ ? impl_->budget() : 0; }

const SupportInfo& ScalarField::support() const {
    static const SupportInfo unbounded{};
    return impl_ ? impl_->support() : unbounded;
}

ScalarField ScalarField::from_evaluator(std::function<Jet(const SpacetimePoint&, int)> ev,
                                        int budget, SupportInfo support) {
    return ScalarField(std::make_shared<BaseField>(std::move(ev), budget, support));
}

ScalarField ScalarField::gaussian_bump(double A, double a, double t0, double b, const Vec3& x0,
                                       int budget) {
    auto ev = [=](const SpacetimePoint& p, int m) {
        Jet dt = jet_t(p, m);
        dt -= Jet::constant(t0, m);
        Jet arg = dt * dt;
        arg *= -a;
        for (int i = 0; i < 3; ++i) {
            Jet dx = jet_x(p, i, m);
            dx -= Jet::constant(x0[i], m);
            Jet sq = dx * dx;
            sq *= -b;
            arg += sq;
        }
        Jet out = arg.exp_();
        out *= A;
        return out;
    };
    return from_evaluator(ev, budget);
}

ScalarField ScalarField::polynomial(std::vector<PolyTerm> terms, int budget) {
    auto ev = [terms = std::move(terms)](const SpacetimePoint& p, int m) {
        Jet out(m);
        for (const auto& term : terms) {
            Jet mono = Jet::constant(term.c, m);
            if (term.e[0] > 0) mono = mono * jet_t(p, m).pow_int(term.e[0]);
            for (int i = 0; i < 3; ++i)
                if (term.e[i + 1] > 0) mono = mono * jet_x(p, i, m).pow_int(term.e[i + 1]);
            out += mono;
        }
        return out;
    };
    return from_evaluator(ev, budget);
}

ScalarField ScalarField::poly_times_bump(std::vector<PolyTerm> terms, double A, double a,
                                         double t0, double b, const Vec3& x0, int budget) {
    ScalarField poly = polynomial(std::move(terms), budget);
    ScalarField bump = gaussian_bump(A, a, t0, b, x0, budget);
    auto ev = [poly, bump](const SpacetimePoint& p, int m) {
        return poly.jet(p, m) * bump.jet(p, m);
    };
    return from_evaluator(ev, budget);
}

ScalarField ScalarField::cone_profile(double fa, double fs0, double ga, double gs0, int budget) {
    auto ev = [=](const SpacetimePoint& p, int m) {
        Jet r = jet_r(p, m);
        Jet s1 = jet_t(p, m) - r;                       // t - r
        Jet s2 = r * jet_t(p, m).reciprocal();          // r / t
        s1 -= Jet::constant(fs0, m);
        s2 -= Jet::constant(gs0, m);
        Jet e1 = s1 * s1;
        e1 *= -fa;
        Jet e2 = s2 * s2;
        e2 *= -ga;
        return (e1 + e2).exp_();
    };
    return from_evaluator(ev, budget);
}

ScalarField ScalarField::transported_bump(double s1, int budget) {
    auto ev = [s1](const SpacetimePoint& p, int m) {
        if (!(p.t > 0.0)) throw std::domain_error("transported_bump requires t > 0");
        // q = (r/t/s1)^2 as a polynomial in x (smooth across the axis)
        Jet q = jet_r2(p, m) * jet_t(p, m).pow_int(-2);
        q *= 1.0 / (s1 * s1);
        const double q0 = q.value();
        if (q0 >= 1.0) return Jet::constant(0.0, m);
        Jet one_minus = Jet::constant(1.0, m) - q;
        return one_minus.pow_int(4);
    };
    return from_evaluator(ev, budget, {SupportInfo::Kind::ConeFraction, s1});
}

ScalarField ScalarField::cone_supported_bump(double A, double rho_a, double rho_t0, int budget) {
    auto ev = [=](const SpacetimePoint& p, int m) {
        if (!(p.t > 1.0)) throw std::domain_error("cone_supported_bump requires t > 1");
        Jet tm1 = jet_t(p, m) - Jet::constant(1.0, m);
        Jet q = jet_r2(p, m) * tm1.pow_int(-2);
        if (q.value() >= 1.0) return Jet::constant(0.0, m);
        Jet shape = (Jet::constant(1.0, m) - q).pow_int(4);
        Jet dt = jet_t(p, m) - Jet::constant(rho_t0, m);
        Jet rho = dt * dt;
        rho *= -rho_a;
        Jet out = shape * rho.exp_();
        out *= A;
        return out;
    };
    return from_evaluator(ev, budget, {SupportInfo::Kind::InsideCone, 0.0});
}

ScalarField apply(FieldOp op, const ScalarField& f) {
    if (f.derivative_budget() < 1)
        throw std::domain_error("derivative budget exhausted in apply()");
    auto base = f.impl_;
    auto deriv = [&](int var) { return std::make_shared<DerivField>(var, base); };
    using P = std::pair<double, std::shared_ptr<const FieldImpl>>;
    switch (op) {
        case FieldOp::D0: return ScalarField(deriv(0));
        case FieldOp::D1: return ScalarField(deriv(1));
        case FieldOp::D2: return ScalarField(deriv(2));
        case FieldOp::D3: return ScalarField(deriv(3));
        case FieldOp::H1:
        case FieldOp::H2:
        case FieldOp::H3: {
            int i = static_cast<int>(op) - static_cast<int>(FieldOp::H1);
            auto a = std::make_shared<CoeffProductField>(coeffs::coordinate_t(), deriv(i + 1));
            auto b = std::make_shared<CoeffProductField>(coeffs::coordinate_x(i), deriv(0));
            return ScalarField(std::make_shared<LinCombField>(
                std::vector<P>{{1.0, a}, {1.0, b}}, base->budget() - 1));
        }
        case FieldOp::Db1:
        case FieldOp::Db2:
        case FieldOp::Db3: {
            int i = static_cast<int>(op) - static_cast<int>(FieldOp::Db1);
            ScalarField h = apply(static_cast<FieldOp>(static_cast<int>(FieldOp::H1) + i), f);
            return ScalarField(
                std::make_shared<CoeffProductField>(coeffs::inv_t(), h.impl_));
        }
        case FieldOp::Nd1:
        case FieldOp::Nd2:
        case FieldOp::Nd3: {
            int i = static_cast<int>(op) - static_cast<int>(FieldOp::Nd1);
            auto a = std::make_shared<CoeffProductField>(coeffs::omega(i), deriv(0));
            auto b = deriv(i + 1);
            return ScalarField(std::make_shared<LinCombField>(
                std::vector<P>{{1.0, a}, {1.0, b}}, base->budget() - 1));
        }
        case FieldOp::GoodT:
            return ScalarField(std::make_shared<CoeffProductField>(
                coeffs::cone_ratio_minus_one(), deriv(0)));
        case FieldOp::GoodX1:
        case FieldOp::GoodX2:
        case FieldOp::GoodX3: {
            int i = static_cast<int>(op) - static_cast<int>(FieldOp::GoodX1);
            return ScalarField(std::make_shared<CoeffProductField>(
                coeffs::cone_ratio_minus_one(), deriv(i + 1)));
        }
    }
    throw std::logic_error("unknown operator");
}

ScalarField coeff_times(CoeffFn c, const ScalarField& f) {
    return ScalarField(std::make_shared<CoeffProductField>(std::move(c), f.impl_));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    using P = std::pair<double, std::shared_ptr<const FieldImpl>>;
    int budget = std::min(a.derivative_budget(), b.derivative_budget());
    return ScalarField(std::make_shared<LinCombField>(
        std::vector<P>{{1.0, a.impl_}, {1.0, b.impl_}}, budget));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    using P = std::pair<double, std::shared_ptr<const FieldImpl>>;
    int budget = std::min(a.derivative_budget(), b.derivative_budget());
    return ScalarField(std::make_shared<LinCombField>(
        std::vector<P>{{1.0, a.impl_}, {-1.0, b.impl_}}, budget));
}

ScalarField operator*(double s, const ScalarField& f) {
    using P = std::pair<double, std::shared_ptr<const FieldImpl>>;
    return ScalarField(std::make_shared<LinCombField>(std::vector<P>{{s, f.impl_}},
                                                      f.derivative_budget()));
}

ScalarField apply_multi(const MultiIndex& J, const ScalarField& f) {
    if (static_cast<int>(J.size()) > f.derivative_budget())
        throw std::domain_error("multi-index longer than derivative budget");
    ScalarField out = f;
    for (auto it = J.ops.rbegin(); it != J.ops.rend(); ++it) out = apply(*it, out);
    return out;
}

ScalarField box(const ScalarField& f) {
    ScalarField out = apply(FieldOp::D0, apply(FieldOp::D0, f));
    for (FieldOp d : {FieldOp::D1, FieldOp::D2, FieldOp::D3}) out = out - apply(d, apply(d, f));
    return out;
}

std::string to_string(FieldOp op) {
    switch (op) {
        case FieldOp::D0: return "d_t";
        case FieldOp::D1: return "d_1";
        case FieldOp::D2: return "d_2";
        case FieldOp::D3: return "d_3";
        case FieldOp::H1: return "H_1";
        case FieldOp::H2: return "H_2";
        case FieldOp::H3: return "H_3";
        case FieldOp::Db1: return "db_1";
        case FieldOp::Db2: return "db_2";
        case FieldOp::Db3: return "db_3";
        case FieldOp::Nd1: return "nd_1";
        case FieldOp::Nd2: return "nd_2";
        case FieldOp::Nd3: return "nd_3";
        case FieldOp::GoodT: return "cone_d_t";
        case FieldOp::GoodX1: return "cone_d_1";
        case FieldOp::GoodX2: return "cone_d_2";
        case FieldOp::GoodX3: return "cone_d_3";
    }
    return "?";
}

// --- frame -------------------------------------------------------------------

Mat4 frame_phi(const Vec3& omega) {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    for (int i = 0; i < 3; ++i) m[i + 1][0] = omega[i];
    return m;
}

Mat4 frame_psi(const Vec3& omega) {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    for (int i = 0; i < 3; ++i) m[i + 1][0] = -omega[i];
    return m;
}

Mat4 frame_transform_two_tensor(const Mat4& T, const Vec3& omega) {
    const Mat4 psi = frame_psi(omega);
    Mat4 out{};
    for (int ap = 0; ap < 4; ++ap)
        for (int bp = 0; bp < 4; ++bp) {
            double s = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) s += psi[a][ap] * psi[b][bp] * T[a][b];
            out[ap][bp] = s;
        }
    return out;
}

Mat4 frame_transform_two_tensor(const Mat4& T, const SpacetimePoint& p) {
    return frame_transform_two_tensor(T, p.omega());
}

}  // namespace hyperfoil
