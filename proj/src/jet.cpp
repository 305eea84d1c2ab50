#include "hyperfoil/jet.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace hyperfoil {

namespace {

// Index tables for graded multi-indices in 4 variables up to kMaxOrder.
struct IndexTable {
    std::vector<std::array<int, 4>> exps;   // position -> exponents
    std::vector<int> ord;                   // position -> |a|
    std::vector<int> count_upto;            // order -> #indices with |a| <= order
    std::vector<int> pos_lookup;            // dense (kMaxOrder+1)^4 -> position
    std::vector<int32_t> prod;              // prod[i*n + j] = pos(a_i + a_j), -1 if > kMaxOrder
    std::vector<int> dpos;                  // dpos[p*4 + v] = pos(a + e_v), -1 if > kMaxOrder

    IndexTable() {
        const int M = Jet::kMaxOrder;
        count_upto.assign(M + 1, 0);
        for (int total = 0; total <= M; ++total) {
            for (int a0 = total; a0 >= 0; --a0)
                for (int a1 = total - a0; a1 >= 0; --a1)
                    for (int a2 = total - a0 - a1; a2 >= 0; --a2) {
                        int a3 = total - a0 - a1 - a2;
                        exps.push_back({a0, a1, a2, a3});
                        ord.push_back(total);
                    }
            count_upto[total] = static_cast<int>(exps.size());
        }
        const int D = M + 1;
        pos_lookup.assign(D * D * D * D, -1);
        for (size_t p = 0; p < exps.size(); ++p) {
            const auto& a = exps[p];
            pos_lookup[((a[0] * D + a[1]) * D + a[2]) * D + a[3]] = static_cast<int>(p);
        }
        const int n = static_cast<int>(exps.size());
        prod.assign(static_cast<size_t>(n) * n, -1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (ord[i] + ord[j] > M) continue;
                std::array<int, 4> s;
                for (int v = 0; v < 4; ++v) s[v] = exps[i][v] + exps[j][v];
                prod[static_cast<size_t>(i) * n + j] =
                    pos_lookup[((s[0] * D + s[1]) * D + s[2]) * D + s[3]];
            }
        dpos.assign(static_cast<size_t>(n) * 4, -1);
        for (int p = 0; p < n; ++p)
            for (int v = 0; v < 4; ++v) {
                if (ord[p] + 1 > M) continue;
                std::array<int, 4> s = exps[p];
                s[v] += 1;
                dpos[static_cast<size_t>(p) * 4 + v] =
                    pos_lookup[((s[0] * D + s[1]) * D + s[2]) * D + s[3]];
            }
    }
};

const IndexTable& table() {
    static const IndexTable t;
    return t;
}

}  // namespace

int Jet::coeff_count(int order) { return table().count_upto[order]; }

std::array<int, 4> Jet::exponents(int pos) { return table().exps[pos]; }

Jet::Jet(int order) : order_(order) {
    if (order < 0 || order > kMaxOrder) throw std::invalid_argument("jet order out of range");
    c_.assign(coeff_count(order), 0.0);
}

Jet Jet::constant(double v, int order) {
    Jet j(order);
    j.c_[0] = v;
    return j;
}

Jet Jet::variable(double v, int var, int order) {
    Jet j(order);
    j.c_[0] = v;
    if (order >= 1) j.c_[table().dpos[0 * 4 + var]] = 1.0;
    return j;
}

double Jet::deriv1(int var) const {
    if (order_ < 1) throw std::logic_error("jet order too low for derivative");
    return c_[table().dpos[0 * 4 + var]];
}

Jet Jet::derivative(int var) const {
    if (order_ < 1) throw std::logic_error("jet order too low for derivative");
    Jet out(order_ - 1);
    const auto& tb = table();
    const int n_out = coeff_count(order_ - 1);
    for (int q = 0; q < n_out; ++q) {
        int p = tb.dpos[static_cast<size_t>(q) * 4 + var];
        out.c_[q] = c_[p] * (tb.exps[q][var] + 1);
    }
    return out;
}

Jet& Jet::operator+=(const Jet& o) {
    if (o.order_ != order_) throw std::logic_error("jet order mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    if (o.order_ != order_) throw std::logic_error("jet order mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet& Jet::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    if (a.order_ != b.order_) throw std::logic_error("jet order mismatch");
    const auto& tb = table();
    const int n_total = static_cast<int>(tb.exps.size());
    Jet out(a.order_);
    const int na = static_cast<int>(a.c_.size());
    for (int i = 0; i < na; ++i) {
        const double ai = a.c_[i];
        if (ai == 0.0) continue;
        const int jmax = Jet::coeff_count(a.order_ - tb.ord[i]);
        const int32_t* row = &tb.prod[static_cast<size_t>(i) * n_total];
        for (int j = 0; j < jmax; ++j) out.c_[row[j]] += ai * b.c_[j];
    }
    return out;
}

Jet Jet::compose_univariate(const double* g) const {
    // Horner evaluation of sum_k g^(k)(u0)/k! * (u - u0)^k in the truncated algebra.
    Jet u_tilde = *this;
    u_tilde.c_[0] = 0.0;
    double fact = 1.0;
    std::vector<double> coef(order_ + 1);
    for (int k = 0; k <= order_; ++k) {
        if (k > 0) fact *= k;
        coef[k] = g[k] / fact;
    }
    Jet r = Jet::constant(coef[order_], order_);
    for (int k = order_ - 1; k >= 0; --k) {
        r = r * u_tilde;
        r.c_[0] += coef[k];
    }
    return r;
}

Jet Jet::exp_() const {
    std::vector<double> g(order_ + 1, std::exp(c_[0]));
    return compose_univariate(g.data());
}

Jet Jet::sqrt_() const {
    const double u0 = c_[0];
    if (!(u0 > 0.0)) throw std::domain_error("jet sqrt of non-positive value");
    // g^(k) = (1/2)(1/2-1)...(1/2-k+1) u0^{1/2-k}
    std::vector<double> g(order_ + 1);
    g[0] = std::sqrt(u0);
    for (int k = 1; k <= order_; ++k) g[k] = g[k - 1] * (0.5 - (k - 1)) / u0;
    return compose_univariate(g.data());
}

Jet Jet::reciprocal() const {
    const double u0 = c_[0];
    if (u0 == 0.0) throw std::domain_error("jet reciprocal of zero");
    std::vector<double> g(order_ + 1);
    g[0] = 1.0 / u0;
    for (int k = 1; k <= order_; ++k) g[k] = g[k - 1] * (-k) / u0;
    return compose_univariate(g.data());
}

Jet Jet::sin_() const {
    const double s = std::sin(c_[0]), c = std::cos(c_[0]);
    const double cyc[4] = {s, c, -s, -c};
    std::vector<double> g(order_ + 1);
    for (int k = 0; k <= order_; ++k) g[k] = cyc[k % 4];
    return compose_univariate(g.data());
}

Jet Jet::cos_() const {
    const double s = std::sin(c_[0]), c = std::cos(c_[0]);
    const double cyc[4] = {c, -s, -c, s};
    std::vector<double> g(order_ + 1);
    for (int k = 0; k <= order_; ++k) g[k] = cyc[k % 4];
    return compose_univariate(g.data());
}

Jet Jet::pow_int(int n) const {
    if (n < 0) {
        Jet r = reciprocal();
        return r.pow_int(-n);
    }
    Jet r = Jet::constant(1.0, order_);
    Jet base = *this;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

}  // namespace hyperfoil
