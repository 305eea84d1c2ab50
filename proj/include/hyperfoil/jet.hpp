#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace hyperfoil {

/// Truncated Taylor expansion in the four coordinates (t, x1, x2, x3).
///
/// Coefficients are stored normalized, c[a] = d^a f / a!, in graded order up
/// to the jet's truncation order. All arithmetic is exact up to round-off, so
/// derivatives extracted from a Jet are closed-form values, not finite
/// differences.
class Jet {
public:
    static constexpr int kVars = 4;
    static constexpr int kMaxOrder = 8;

    explicit Jet(int order);
    static Jet constant(double v, int order);
    /// Seed for a coordinate: value v, unit first derivative in `var`.
    static Jet variable(double v, int var, int order);

    int order() const { return order_; }
    double value() const { return c_[0]; }
    /// First derivative d/d var (0 = t, 1..3 = x components).
    double deriv1(int var) const;
    /// Jet of the derivative field, one order lower.
    Jet derivative(int var) const;
    /// Raw normalized coefficient for the multi-index at `pos`.
    double coeff(int pos) const { return c_[pos]; }

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(const Jet& a, const Jet& b);

    /// g(f) for a univariate g given derivative values g^(k)(f.value()),
    /// k = 0..order. Used to implement exp, sqrt, 1/x, ... exactly.
    Jet compose_univariate(const double* gderivs) const;

    Jet exp_() const;
    Jet sqrt_() const;       ///< requires value() > 0
    Jet reciprocal() const;  ///< requires value() != 0
    Jet sin_() const;
    Jet cos_() const;
    Jet pow_int(int n) const;

    /// Number of coefficients of a jet of the given order.
    static int coeff_count(int order);
    /// Exponents of the multi-index stored at `pos`.
    static std::array<int, 4> exponents(int pos);

private:
    int order_;
    std::vector<double> c_;
};

}  // namespace hyperfoil
