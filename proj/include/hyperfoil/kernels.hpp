#pragma once

#include <cstddef>
#include <span>

namespace hyperfoil::kernels {

/// Grid arrays carry kGhost cells on each side; pointers passed to the
/// stencil kernels address physical node 0 (so u[-1], u[-2] are ghosts).
inline constexpr int kGhost = 2;

/// Even-parity ghost fill at the axis and zero fill past the outer edge.
/// `a` spans the full array including ghosts, n physical nodes.
void fill_ghosts(std::span<double> a, int n);

/// lap = u'' + (2/r) u' on r_j = j dr; the axis row uses the parity limit
/// 3 u''(0). OpenMP-parallel; the _serial twin is the reference used by the
/// tests and the benchmark.
void radial_laplacian(const double* u, double* lap, int n, double dr);
void radial_laplacian_serial(const double* u, double* lap, int n, double dr);

/// Central first derivative in r (even at the axis, so du(0) = 0).
void radial_derivative(const double* u, double* du, int n, double dr);
void radial_derivative_serial(const double* u, double* du, int n, double dr);

/// y = a + s * b over n entries.
void axpby(const double* a, const double* b, double s, double* y, int n);

/// y += (h/6) (k1 + 2 k2 + 2 k3 + k4) over n entries.
void rk4_accumulate(double* y, const double* k1, const double* k2, const double* k3,
                    const double* k4, double h, int n);

double linf(const double* a, int n);
/// Radial L2 norm sqrt(4 pi sum u^2 r^2 dr); serial on purpose (feeds CSV).
double l2_radial(const double* u, int n, double dr);

}  // namespace hyperfoil::kernels
