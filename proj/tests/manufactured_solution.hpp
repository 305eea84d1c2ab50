#pragma once

// Closed-form manufactured solution shared by the solver tests and the
// acceptance suite:
//
//   u(t, r) = A (1 - q)^4 rho(t),  q = r^2/(t-1)^2,  rho = exp(-ra (t-t0)^2)
//
// supported inside r <= t - 1. The source f = box u + a^2 u is assembled from
// the hand-derived derivatives below; the jet evaluation of the same field
// (ScalarField::cone_supported_bump) serves as the independent oracle.

#include <cmath>

namespace hyperfoil::testing {

struct ManufacturedSolution {
    double A = 0.01;
    double rho_a = 0.25;
    double rho_t0 = 6.0;
    double mass = 0.0;

    double rho(double t) const { return std::exp(-rho_a * (t - rho_t0) * (t - rho_t0)); }
    double rho_t(double t) const { return -2.0 * rho_a * (t - rho_t0) * rho(t); }
    double rho_tt(double t) const {
        const double d = t - rho_t0;
        return (4.0 * rho_a * rho_a * d * d - 2.0 * rho_a) * rho(t);
    }

    double value(double t, double r) const {
        const double w = t - 1.0;
        const double q = r * r / (w * w);
        if (q >= 1.0) return 0.0;
        const double s = 1.0 - q;
        return A * s * s * s * s * rho(t);
    }

    double dt(double t, double r) const {
        const double w = t - 1.0;
        const double q = r * r / (w * w);
        if (q >= 1.0) return 0.0;
        const double s = 1.0 - q;
        const double S = s * s * s * s;
        const double Sp = -4.0 * s * s * s;
        // d_t q = -2 q / w
        return A * (Sp * (-2.0 * q / w) * rho(t) + S * rho_t(t));
    }

    /// f = d_tt u - Laplace u + mass^2 u
    double source(double t, double r) const {
        const double w = t - 1.0;
        const double q = r * r / (w * w);
        if (q >= 1.0) return 0.0;
        const double s = 1.0 - q;
        const double S = s * s * s * s;
        const double Sp = -4.0 * s * s * s;
        const double Spp = 12.0 * s * s;
        const double rh = rho(t);
        const double utt_minus_lap =
            rh * (4.0 * q * (q - 1.0) * Spp + 6.0 * (q - 1.0) * Sp) / (w * w) -
            4.0 * q * Sp * rho_t(t) / w + S * rho_tt(t);
        return A * (utt_minus_lap + mass * mass * S * rh);
    }
};

}  // namespace hyperfoil::testing
