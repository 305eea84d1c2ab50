#include "hyperfoil/nullcond.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hyperfoil {

CoefficientTensors::CoefficientTensors(int j0_, int k0_) : j0(j0_), k0(k0_) {
    if (j0 < 0 || k0 < 0 || j0 + k0 < 1)
        throw std::invalid_argument("need at least one component");
    const size_t n = ncomp();
    A_.assign(n * n * 4 * 4 * 4 * n, 0.0);
    B_.assign(n * n * 4 * 4 * n, 0.0);
    P_.assign(n * 4 * 4 * n * n, 0.0);
    Q_.assign(n * 4 * n * n, 0.0);
    R_.assign(n * n * n, 0.0);
}

size_t CoefficientTensors::ia(int i, int j, int al, int be, int ga, int k) const {
    const size_t n = ncomp();
    return ((((static_cast<size_t>(i) * n + j) * 4 + al) * 4 + be) * 4 + ga) * n + k;
}
size_t CoefficientTensors::ib(int i, int j, int al, int be, int k) const {
    const size_t n = ncomp();
    return (((static_cast<size_t>(i) * n + j) * 4 + al) * 4 + be) * n + k;
}
size_t CoefficientTensors::ip(int i, int al, int be, int j, int k) const {
    const size_t n = ncomp();
    return (((static_cast<size_t>(i) * 4 + al) * 4 + be) * n + j) * n + k;
}
size_t CoefficientTensors::iq(int i, int al, int j, int k) const {
    const size_t n = ncomp();
    return ((static_cast<size_t>(i) * 4 + al) * n + j) * n + k;
}
size_t CoefficientTensors::ir(int i, int j, int k) const {
    const size_t n = ncomp();
    return (static_cast<size_t>(i) * n + j) * n + k;
}

double CoefficientTensors::coefficient_scale() const {
    double m = 0.0;
    for (const auto* v : {&A_, &B_, &P_, &Q_, &R_})
        for (double x : *v) m = std::max(m, std::abs(x));
    return m;
}

std::string CoefficientTensors::symmetry_violations(double tol) const {
    std::ostringstream out;
    const int n = ncomp();
    const double scale = std::max(1.0, coefficient_scale());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int al = 0; al < 4; ++al)
                for (int be = 0; be < 4; ++be) {
                    for (int ga = 0; ga < 4; ++ga)
                        for (int k = 0; k < n; ++k)
                            if (std::abs(a(i, j, al, be, ga, k) - a(j, i, be, al, ga, k)) >
                                tol * scale)
                                out << "A[" << i + 1 << "][" << j + 1 << "](" << al << be << ga
                                    << ")[" << k + 1 << "] breaks G_i^{jab} = G_j^{iba}\n";
                    for (int k = 0; k < n; ++k)
                        if (std::abs(b(i, j, al, be, k) - b(j, i, be, al, k)) > tol * scale)
                            out << "B[" << i + 1 << "][" << j + 1 << "](" << al << be << ")["
                                << k + 1 << "] breaks G_i^{jab} = G_j^{iba}\n";
                }
    return out.str();
}

std::string CoefficientTensors::structural_zero_violations() const {
    std::ostringstream out;
    const int n = ncomp();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            for (int al = 0; al < 4; ++al)
                for (int be = 0; be < 4; ++be)
                    for (int k = 0; k < j0; ++k)
                        if (b(i, j, al, be, k) != 0.0)
                            out << "B with wave last index must vanish: B " << i + 1 << " "
                                << j + 1 << " " << al << " " << be << " " << k + 1 << "\n";
        for (int al = 0; al < 4; ++al)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < j0; ++k)
                    if (q(i, al, j, k) != 0.0)
                        out << "Q with wave last index must vanish: Q " << i + 1 << " " << al
                            << " " << j + 1 << " " << k + 1 << "\n";
        for (int j = 0; j < j0; ++j)
            for (int k = 0; k < n; ++k)
                if (r(i, j, k) != 0.0)
                    out << "R with wave first index must vanish: R " << i + 1 << " " << j + 1
                        << " " << k + 1 << "\n";
    }
    return out.str();
}

namespace {

struct LineScanner {
    std::string_view text;
    size_t pos = 0;
    int line = 0;

    bool next_line(std::string& out) {
        if (pos >= text.size()) return false;
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        out.assign(text.substr(pos, end - pos));
        pos = end + 1;
        ++line;
        return true;
    }
};

}  // namespace

CoefficientTensors CoefficientTensors::parse(std::string_view text, bool quasilinear_mode) {
    // First pass: find the header to size the arrays; entries may precede it
    // only if the defaults (1 wave + 1 Klein-Gordon) apply.
    int j0 = 1, k0 = 1;
    {
        LineScanner scan{text};
        std::string line;
        while (scan.next_line(line)) {
            std::istringstream is(line);
            std::string tag;
            if (!(is >> tag) || tag[0] == '#') continue;
            if (tag == "system") {
                if (!(is >> j0 >> k0))
                    throw ParseError("system header needs two counts", scan.line, 1);
                if (j0 < 0 || k0 < 0 || j0 + k0 < 1)
                    throw ParseError("invalid component counts", scan.line, 1);
                break;
            }
        }
    }
    CoefficientTensors c(j0, k0);
    LineScanner scan{text};
    std::string line;
    while (scan.next_line(line)) {
        std::istringstream is(line);
        std::string tag;
        if (!(is >> tag)) continue;
        if (tag[0] == '#') continue;
        if (tag == "system") continue;
        auto column = [&] { return static_cast<int>(std::max<std::streamoff>(1, is.tellg())); };
        auto comp = [&](int v) {
            if (v < 1 || v > c.ncomp())
                throw ParseError("component index out of range [1," +
                                     std::to_string(c.ncomp()) + "]",
                                 scan.line, column());
            return v - 1;
        };
        auto greek = [&](int v) {
            if (v < 0 || v > 3)
                throw ParseError("Greek index out of range [0,3]", scan.line, column());
            return v;
        };
        auto fail_if = [&](bool bad, const char* what) {
            if (bad) throw ParseError(what, scan.line, column());
        };
        if (tag == "A") {
            int i, j, al, be, ga, k;
            double v;
            fail_if(!(is >> i >> j >> al >> be >> ga >> k >> v), "A needs: i j a b c k value");
            c.set_a(comp(i), comp(j), greek(al), greek(be), greek(ga), comp(k), v);
        } else if (tag == "B") {
            int i, j, al, be, k;
            double v;
            fail_if(!(is >> i >> j >> al >> be >> k >> v), "B needs: i j a b k value");
            c.set_b(comp(i), comp(j), greek(al), greek(be), comp(k), v);
        } else if (tag == "P") {
            int i, al, be, j, k;
            double v;
            fail_if(!(is >> i >> al >> be >> j >> k >> v), "P needs: i a b j k value");
            c.set_p(comp(i), greek(al), greek(be), comp(j), comp(k), v);
        } else if (tag == "Q") {
            int i, al, j, k;
            double v;
            fail_if(!(is >> i >> al >> j >> k >> v), "Q needs: i a j k value");
            c.set_q(comp(i), greek(al), comp(j), comp(k), v);
        } else if (tag == "R") {
            int i, j, k;
            double v;
            fail_if(!(is >> i >> j >> k >> v), "R needs: i j k value");
            c.set_r(comp(i), comp(j), comp(k), v);
        } else {
            throw ParseError("unknown record tag '" + tag + "'", scan.line, 1);
        }
        std::string trailing;
        if (is >> trailing && trailing[0] != '#')
            throw ParseError("trailing tokens after record", scan.line,
                             static_cast<int>(is.tellg()));
    }
    if (quasilinear_mode) {
        std::string viol = c.structural_zero_violations();
        if (!viol.empty())
            throw std::invalid_argument("structural zeros violated:\n" + viol);
    }
    return c;
}

CoefficientTensors CoefficientTensors::load_file(const std::string& path, bool quasilinear_mode) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tensor file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), quasilinear_mode);
}

std::string CoefficientTensors::dump() const {
    std::ostringstream out;
    char num[64];
    auto fmt = [&](double v) {
        std::snprintf(num, sizeof num, "%.17g", v);
        return std::string(num);
    };
    out << "system " << j0 << " " << k0 << "\n";
    const int n = ncomp();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int al = 0; al < 4; ++al)
                for (int be = 0; be < 4; ++be)
                    for (int ga = 0; ga < 4; ++ga)
                        for (int k = 0; k < n; ++k)
                            if (double v = a(i, j, al, be, ga, k); v != 0.0)
                                out << "A " << i + 1 << " " << j + 1 << " " << al << " " << be
                                    << " " << ga << " " << k + 1 << " " << fmt(v) << "\n";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int al = 0; al < 4; ++al)
                for (int be = 0; be < 4; ++be)
                    for (int k = 0; k < n; ++k)
                        if (double v = b(i, j, al, be, k); v != 0.0)
                            out << "B " << i + 1 << " " << j + 1 << " " << al << " " << be << " "
                                << k + 1 << " " << fmt(v) << "\n";
    for (int i = 0; i < n; ++i)
        for (int al = 0; al < 4; ++al)
            for (int be = 0; be < 4; ++be)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        if (double v = p(i, al, be, j, k); v != 0.0)
                            out << "P " << i + 1 << " " << al << " " << be << " " << j + 1 << " "
                                << k + 1 << " " << fmt(v) << "\n";
    for (int i = 0; i < n; ++i)
        for (int al = 0; al < 4; ++al)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (double v = q(i, al, j, k); v != 0.0)
                        out << "Q " << i + 1 << " " << al << " " << j + 1 << " " << k + 1 << " "
                            << fmt(v) << "\n";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (double v = r(i, j, k); v != 0.0)
                    out << "R " << i + 1 << " " << j + 1 << " " << k + 1 << " " << fmt(v) << "\n";
    return out.str();
}

CoefficientTensors CoefficientTensors::q0_form(int j0, int k0, int cj, int ck) {
    CoefficientTensors c(j0, k0);
    for (int i = 0; i < j0; ++i) {
        c.set_p(i, 0, 0, cj, ck, 1.0);
        for (int a = 1; a < 4; ++a) c.set_p(i, a, a, cj, ck, -1.0);
    }
    return c;
}

CoefficientTensors CoefficientTensors::qab_form(int j0, int k0, int alpha, int beta, int cj,
                                                int ck) {
    CoefficientTensors c(j0, k0);
    for (int i = 0; i < j0; ++i) {
        c.set_p(i, alpha, beta, cj, ck, 1.0);
        c.set_p(i, beta, alpha, cj, ck, -1.0);
    }
    return c;
}

CoefficientTensors CoefficientTensors::dt_square_form(int j0, int k0, int cj, int ck) {
    CoefficientTensors c(j0, k0);
    for (int i = 0; i < j0; ++i) c.set_p(i, 0, 0, cj, ck, 1.0);
    return c;
}

std::vector<Vec3> fibonacci_sphere(int n, uint64_t seed) {
    // Prefix-stable low-discrepancy sequence: van der Corput base 2 for the
    // polar coordinate, golden-ratio rotation for the azimuth. Growing n only
    // appends samples, so violation maxima are monotone in the sample count.
    std::vector<Vec3> out;
    out.reserve(n);
    const double inv_golden = 2.0 / (1.0 + std::sqrt(5.0));
    const double rot = 2.0 * 3.14159265358979323846 *
                       (static_cast<double>(seed % 360) / 360.0);
    for (int k = 0; k < n; ++k) {
        double vdc = 0.0, base = 0.5;
        for (uint32_t bits = static_cast<uint32_t>(k + 1); bits; bits >>= 1, base *= 0.5)
            if (bits & 1) vdc += base;
        const double z = 1.0 - 2.0 * vdc;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = 2.0 * 3.14159265358979323846 *
                               (k * inv_golden - std::floor(k * inv_golden)) +
                           rot;
        Vec3 v{rho * std::cos(phi), rho * std::sin(phi), z};
        const double nrm = norm3(v);
        out.push_back({v[0] / nrm, v[1] / nrm, v[2] / nrm});
    }
    return out;
}

std::vector<NullVector> sample_null_cone(int n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("need n >= 1 null samples");
    std::vector<NullVector> out;
    out.reserve(n);
    // Axis-aligned directions first, so axis-only violations are always hit.
    const double axes[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                               {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    for (int s = 0; s < 2 && static_cast<int>(out.size()) < n; ++s)
        for (const auto& e : axes) {
            if (static_cast<int>(out.size()) >= n) break;
            out.push_back({{s == 0 ? 1.0 : -1.0, e[0], e[1], e[2]}});
        }
    const double scalings[3] = {1.0, 0.5, 2.0};
    const int remaining = n - static_cast<int>(out.size());
    if (remaining > 0) {
        auto dirs = fibonacci_sphere(remaining / 2 + 1, seed);
        for (int m = 0; m < remaining; ++m) {
            const Vec3& w = dirs[m / 2];
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            const double lam = scalings[m % 3];
            out.push_back({{lam * sign, lam * w[0], lam * w[1], lam * w[2]}});
        }
    }
    return out;
}

NullVerdict check_null_condition(const CoefficientTensors& c, std::span<const NullVector> samples,
                                 double tol) {
    NullVerdict v;
    v.scale = std::max(c.coefficient_scale(), 1e-300);
    double worst_rel = 0.0;
    for (const auto& s : samples) {
        const auto& xi = s.xi;
        const double norm = std::max({std::abs(xi[0]), std::abs(xi[1]), std::abs(xi[2]),
                                      std::abs(xi[3])});
        for (int i = 0; i < c.j0; ++i)
            for (int j = 0; j < c.j0; ++j) {
                // A contraction over three Greek slots (wave-block k)
                for (int k = 0; k < c.j0; ++k) {
                    double s3 = 0.0;
                    for (int al = 0; al < 4; ++al)
                        for (int be = 0; be < 4; ++be)
                            for (int ga = 0; ga < 4; ++ga)
                                s3 += c.a(i, j, al, be, ga, k) * xi[al] * xi[be] * xi[ga];
                    v.max_violation = std::max(v.max_violation, std::abs(s3));
                    worst_rel = std::max(worst_rel,
                                         std::abs(s3) / (v.scale * norm * norm * norm));
                }
                for (int k = 0; k < c.j0; ++k) {
                    double s2 = 0.0;
                    for (int al = 0; al < 4; ++al)
                        for (int be = 0; be < 4; ++be)
                            s2 += c.b(i, j, al, be, k) * xi[al] * xi[be];
                    v.max_violation = std::max(v.max_violation, std::abs(s2));
                    worst_rel = std::max(worst_rel, std::abs(s2) / (v.scale * norm * norm));
                }
            }
        // P contraction on wave-wave argument blocks, all wave equations i
        for (int i = 0; i < c.j0; ++i)
            for (int j = 0; j < c.j0; ++j)
                for (int k = 0; k < c.j0; ++k) {
                    double s2 = 0.0;
                    for (int al = 0; al < 4; ++al)
                        for (int be = 0; be < 4; ++be)
                            s2 += c.p(i, al, be, j, k) * xi[al] * xi[be];
                    v.max_violation = std::max(v.max_violation, std::abs(s2));
                    worst_rel = std::max(worst_rel, std::abs(s2) / (v.scale * norm * norm));
                }
    }
    v.pass = worst_rel <= tol;
    return v;
}

NullVerdict check_weak_null(const CoefficientTensors& c, const Vec3& omega, double tol) {
    const double nrm = norm3(omega);
    if (!(nrm > 0.0)) throw std::domain_error("weak-null check needs r > 0");
    const std::array<double, 4> nu{1.0, -omega[0] / nrm, -omega[1] / nrm, -omega[2] / nrm};
    NullVerdict v;
    v.scale = std::max(c.coefficient_scale(), 1e-300);
    for (int i = 0; i < c.j0; ++i)
        for (int j = 0; j < c.j0; ++j)
            for (int k = 0; k < c.j0; ++k) {
                double a3 = 0.0, b2 = 0.0, p2 = 0.0;
                for (int al = 0; al < 4; ++al)
                    for (int be = 0; be < 4; ++be) {
                        for (int ga = 0; ga < 4; ++ga)
                            a3 += c.a(i, j, al, be, ga, k) * nu[al] * nu[be] * nu[ga];
                        b2 += c.b(i, j, al, be, k) * nu[al] * nu[be];
                        p2 += c.p(i, al, be, j, k) * nu[al] * nu[be];
                    }
                v.max_violation =
                    std::max({v.max_violation, std::abs(a3), std::abs(b2), std::abs(p2)});
            }
    v.pass = v.max_violation <= tol * v.scale;
    return v;
}

NullVerdict check_weak_null_sampled(const CoefficientTensors& c, int n_dirs, uint64_t seed,
                                    double tol) {
    NullVerdict worst;
    worst.pass = true;
    worst.scale = std::max(c.coefficient_scale(), 1e-300);
    for (const auto& w : fibonacci_sphere(n_dirs, seed)) {
        NullVerdict v = check_weak_null(c, w, tol);
        worst.max_violation = std::max(worst.max_violation, v.max_violation);
        worst.pass = worst.pass && v.pass;
    }
    return worst;
}

}  // namespace hyperfoil
