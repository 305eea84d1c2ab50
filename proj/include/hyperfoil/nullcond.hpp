#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperfoil/geometry.hpp"

namespace hyperfoil {

/// Constant coefficient arrays defining the quadratic structure of a coupled
/// system with j0 wave components followed by k0 Klein-Gordon components.
/// Component indices are 0-based internally; the text format is 1-based.
///
///   A[i][j][a][b][c][k]  cubic quasilinear coefficients (G = A dw + B w)
///   B[i][j][a][b][k]     quasilinear coefficients multiplying w_k
///   P[i][a][b][j][k]     semilinear dw dw
///   Q[i][a][j][k]        semilinear w dw
///   R[i][j][k]           semilinear w w
class CoefficientTensors {
public:
    CoefficientTensors() : CoefficientTensors(1, 1) {}
    CoefficientTensors(int j0, int k0);

    int j0 = 1, k0 = 1;
    int ncomp() const { return j0 + k0; }
    bool is_wave(int i) const { return i < j0; }

    double a(int i, int j, int al, int be, int ga, int k) const { return A_[ia(i, j, al, be, ga, k)]; }
    double b(int i, int j, int al, int be, int k) const { return B_[ib(i, j, al, be, k)]; }
    double p(int i, int al, int be, int j, int k) const { return P_[ip(i, al, be, j, k)]; }
    double q(int i, int al, int j, int k) const { return Q_[iq(i, al, j, k)]; }
    double r(int i, int j, int k) const { return R_[ir(i, j, k)]; }

    void set_a(int i, int j, int al, int be, int ga, int k, double v) { A_[ia(i, j, al, be, ga, k)] = v; }
    void set_b(int i, int j, int al, int be, int k, double v) { B_[ib(i, j, al, be, k)] = v; }
    void set_p(int i, int al, int be, int j, int k, double v) { P_[ip(i, al, be, j, k)] = v; }
    void set_q(int i, int al, int j, int k, double v) { Q_[iq(i, al, j, k)] = v; }
    void set_r(int i, int j, int k, double v) { R_[ir(i, j, k)] = v; }

    /// Largest coefficient magnitude (the scale K).
    double coefficient_scale() const;

    /// Hyperbolicity symmetry induced on A and B by G_i^{j a b} = G_j^{i b a};
    /// returns a human-readable violation report, empty when consistent.
    std::string symmetry_violations(double tol = 1e-12) const;

    /// Structural zeros of the restricted regime:
    /// B_i^{j a b k} = 0 and Q_i^{a j k} = 0 for wave k, R_i^{j k} = 0 for
    /// wave j. Returns a report, empty when satisfied.
    std::string structural_zero_violations() const;

    /// Parse the line-oriented text format; quasilinear_mode additionally
    /// enforces the structural zeros. Throws ParseError with line/column.
    static CoefficientTensors parse(std::string_view text, bool quasilinear_mode = false);
    static CoefficientTensors load_file(const std::string& path, bool quasilinear_mode = false);
    std::string dump() const;

    // --- classical catalog (acting on components j, k) ----------------------
    static CoefficientTensors q0_form(int j0, int k0, int cj, int ck);
    static CoefficientTensors qab_form(int j0, int k0, int alpha, int beta, int cj, int ck);
    static CoefficientTensors dt_square_form(int j0, int k0, int cj, int ck);

private:
    size_t ia(int i, int j, int al, int be, int ga, int k) const;
    size_t ib(int i, int j, int al, int be, int k) const;
    size_t ip(int i, int al, int be, int j, int k) const;
    size_t iq(int i, int al, int j, int k) const;
    size_t ir(int i, int j, int k) const;
    std::vector<double> A_, B_, P_, Q_, R_;
};

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

/// A covector on the light cone, xi_0^2 = |xi|^2.
struct NullVector {
    std::array<double, 4> xi{1.0, 1.0, 0.0, 0.0};
    double constraint_residual() const {
        return std::abs(xi[0] * xi[0] - xi[1] * xi[1] - xi[2] * xi[2] - xi[3] * xi[3]);
    }
};

/// Deterministic null covectors: the axis directions (+-1, +-e_i) first, then
/// (+-1, omega) for a low-discrepancy sphere sequence, with scalings.
std::vector<NullVector> sample_null_cone(int n, uint64_t seed);

struct NullVerdict {
    bool pass = false;
    double max_violation = 0.0;  // worst |contraction| over samples and wave-block indices
    double scale = 1.0;          // coefficient scale used in the threshold
};

/// Contract A, B, P against null covectors on the wave-component block; pass
/// iff every contraction is below tol * scale * |xi|^degree.
NullVerdict check_null_condition(const CoefficientTensors& c, std::span<const NullVector> samples,
                                 double tol = 1e-12);

/// Frame-transform A, B, P at direction omega and test the all-time-component
/// entries on the wave-wave block: contraction with nu = (1, -omega).
NullVerdict check_weak_null(const CoefficientTensors& c, const Vec3& omega, double tol = 1e-12);

/// Weak-null over a deterministic sample of directions; returns the worst.
NullVerdict check_weak_null_sampled(const CoefficientTensors& c, int n_dirs, uint64_t seed,
                                    double tol = 1e-12);

/// Unit sphere directions from the Fibonacci lattice, rotated by the seed.
std::vector<Vec3> fibonacci_sphere(int n, uint64_t seed);

}  // namespace hyperfoil
