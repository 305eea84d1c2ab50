#include "hyperfoil/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace hyperfoil::kernels {

void fill_ghosts(std::span<double> a, int n) {
    // physical node j lives at a[kGhost + j]
    a[kGhost - 1] = a[kGhost + 1];
    a[kGhost - 2] = a[kGhost + 2];
    a[kGhost + n] = 0.0;
    a[kGhost + n + 1] = 0.0;
}

void radial_laplacian(const double* u, double* lap, int n, double dr) {
    const double idr2 = 1.0 / (dr * dr);
    lap[0] = 6.0 * (u[1] - u[0]) * idr2;
#pragma omp parallel for schedule(static)
    for (int j = 1; j < n; ++j) {
        const double upp = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * idr2;
        const double up = (u[j + 1] - u[j - 1]) / (2.0 * dr);
        lap[j] = upp + 2.0 / (j * dr) * up;
    }
}

void radial_laplacian_serial(const double* u, double* lap, int n, double dr) {
    const double idr2 = 1.0 / (dr * dr);
    lap[0] = 6.0 * (u[1] - u[0]) * idr2;
    for (int j = 1; j < n; ++j) {
        const double upp = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * idr2;
        const double up = (u[j + 1] - u[j - 1]) / (2.0 * dr);
        lap[j] = upp + 2.0 / (j * dr) * up;
    }
}

void radial_derivative(const double* u, double* du, int n, double dr) {
    du[0] = 0.0;
#pragma omp parallel for schedule(static)
    for (int j = 1; j < n; ++j) du[j] = (u[j + 1] - u[j - 1]) / (2.0 * dr);
}

void radial_derivative_serial(const double* u, double* du, int n, double dr) {
    du[0] = 0.0;
    for (int j = 1; j < n; ++j) du[j] = (u[j + 1] - u[j - 1]) / (2.0 * dr);
}

void axpby(const double* a, const double* b, double s, double* y, int n) {
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) y[j] = a[j] + s * b[j];
}

void rk4_accumulate(double* y, const double* k1, const double* k2, const double* k3,
                    const double* k4, double h, int n) {
    const double c = h / 6.0;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n; ++j) y[j] += c * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
}

double linf(const double* a, int n) {
    double m = 0.0;
    for (int j = 0; j < n; ++j) m = std::max(m, std::abs(a[j]));
    return m;
}

double l2_radial(const double* u, int n, double dr) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
        const double r = j * dr;
        s += u[j] * u[j] * r * r;
    }
    return std::sqrt(4.0 * 3.14159265358979323846 * s * dr);
}

}  // namespace hyperfoil::kernels
