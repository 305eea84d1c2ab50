#include "hyperfoil/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hyperfoil {

using kernels::kGhost;

void SystemSpec::validate() const {
    if (static_cast<int>(masses.size()) != ncomp())
        throw std::invalid_argument("masses must have one entry per component");
    for (int i = 0; i < j0; ++i)
        if (masses[i] != 0.0) throw std::invalid_argument("wave components must have mass 0");
    for (int i = j0; i < ncomp(); ++i)
        if (!(masses[i] >= 1.0))
            throw std::invalid_argument("Klein-Gordon components must have mass >= 1");
    if (tensors.j0 != j0 || tensors.k0 != k0)
        throw std::invalid_argument("tensor block structure does not match the system");
    const std::string sym = tensors.symmetry_violations();
    if (!sym.empty()) throw std::invalid_argument("tensor symmetry violated:\n" + sym);
}

void RadialGrid::validate() const {
    if (!(dr > 0.0) || !(r_max > dr)) throw std::invalid_argument("bad radial grid");
    if (!(cfl > 0.0) || cfl > 0.5)
        throw std::invalid_argument("CFL factor must lie in (0, 0.5]");
}

void CauchyState::init(int ncomp_, int n_) {
    ncomp = ncomp_;
    n = n_;
    u.assign(ncomp, std::vector<double>(n + 2 * kGhost, 0.0));
    p.assign(ncomp, std::vector<double>(n + 2 * kGhost, 0.0));
}

double CauchyState::support_radius(const RadialGrid& g, double thresh) const {
    int jmax = -1;
    for (int c = 0; c < ncomp; ++c) {
        auto uc = u_phys(c);
        for (int j = n - 1; j > jmax; --j)
            if (std::abs(uc[j]) > thresh) {
                jmax = j;
                break;
            }
    }
    return jmax < 0 ? 0.0 : g.r(jmax);
}

// --- evolver -----------------------------------------------------------------

RadialEvolver::RadialEvolver(SystemSpec spec, RadialGrid grid)
    : spec_(std::move(spec)), grid_(grid) {
    spec_.validate();
    grid_.validate();
    const int n = grid_.n();
    const int nc = spec_.ncomp();
    s_.init(nc, n);
    stage_.init(nc, n);
    ur_.assign(nc, std::vector<double>(n, 0.0));
    lap_.assign(nc, std::vector<double>(n, 0.0));
    for (auto& v : du_) v.assign(nc, std::vector<double>(n, 0.0));
    for (auto& v : dp_) v.assign(nc, std::vector<double>(n, 0.0));

    const auto& c = spec_.tensors;
    for (int i = 0; i < nc; ++i) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int j = 0; j < nc; ++j)
                    for (int k = 0; k < nc; ++k)
                        if (double v = c.p(i, a, b, j, k); v != 0.0)
                            pe_.push_back({i, a, b, j, k, v});
        for (int a = 0; a < 2; ++a)
            for (int j = 0; j < nc; ++j)
                for (int k = 0; k < nc; ++k)
                    if (double v = c.q(i, a, j, k); v != 0.0) qe_.push_back({i, a, j, k, v});
        for (int j = 0; j < nc; ++j)
            for (int k = 0; k < nc; ++k)
                if (double v = c.r(i, j, k); v != 0.0) re_.push_back({i, j, k, v});
        if (spec_.quasilinear_terms) {
            for (int j = 0; j < nc; ++j)
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        for (int g = 0; g < 2; ++g)
                            for (int k = 0; k < nc; ++k)
                                if (double v = c.a(i, j, a, b, g, k); v != 0.0)
                                    ae_.push_back({i, j, a, b, g, k, v});
                        for (int k = 0; k < nc; ++k)
                            if (double v = c.b(i, j, a, b, k); v != 0.0)
                                be_.push_back({i, j, a, b, k, v});
                    }
        }
    }
}

void RadialEvolver::set_initial(const std::function<double(int, double)>& u0,
                                const std::function<double(int, double)>& u1, double t0) {
    s_.t = t0;
    const int n = grid_.n();
    for (int c = 0; c < s_.ncomp; ++c) {
        auto uc = s_.u_phys(c);
        auto pc = s_.p_phys(c);
        for (int j = 0; j < n; ++j) {
            uc[j] = u0(c, grid_.r(j));
            pc[j] = u1(c, grid_.r(j));
        }
    }
}

void RadialEvolver::rhs(const CauchyState& in, std::vector<std::vector<double>>& du,
                        std::vector<std::vector<double>>& dp) {
    const int n = in.n;
    const int nc = in.ncomp;
    const double dr = grid_.dr;
    auto& mut = const_cast<CauchyState&>(in);  // ghost cells only
    for (int c = 0; c < nc; ++c) {
        kernels::fill_ghosts(mut.u[c], n);
        kernels::fill_ghosts(mut.p[c], n);
        const double* up = in.u[c].data() + kGhost;
        if (parallel_) {
            kernels::radial_laplacian(up, lap_[c].data(), n, dr);
            kernels::radial_derivative(up, ur_[c].data(), n, dr);
        } else {
            kernels::radial_laplacian_serial(up, lap_[c].data(), n, dr);
            kernels::radial_derivative_serial(up, ur_[c].data(), n, dr);
        }
    }
    for (int c = 0; c < nc; ++c) {
        const double m2 = spec_.masses[c] * spec_.masses[c];
        auto pc = in.p_phys(c);
        auto uc = in.u_phys(c);
        double* duc = du[c].data();
        double* dpc = dp[c].data();
        const double* lap = lap_[c].data();
#pragma omp parallel for schedule(static) if (parallel_)
        for (int j = 0; j < n; ++j) {
            duc[j] = pc[j];
            dpc[j] = lap[j] - m2 * uc[j];
        }
    }
    // semilinear sources: d(0,c) = p_c, d(1,c) = d_r u_c
    auto dview = [&](int a, int c) -> const double* {
        return a == 0 ? in.p[c].data() + kGhost : ur_[c].data();
    };
    for (const auto& e : pe_) {
        const double* x = dview(e.a, e.j);
        const double* y = dview(e.b, e.k);
        double* dpc = dp[e.i].data();
        const double v = e.v;
#pragma omp parallel for schedule(static) if (parallel_)
        for (int j = 0; j < n; ++j) dpc[j] += v * x[j] * y[j];
    }
    for (const auto& e : qe_) {
        const double* x = dview(e.a, e.j);
        const double* y = in.u[e.k].data() + kGhost;
        double* dpc = dp[e.i].data();
        const double v = e.v;
#pragma omp parallel for schedule(static) if (parallel_)
        for (int j = 0; j < n; ++j) dpc[j] += v * x[j] * y[j];
    }
    for (const auto& e : re_) {
        const double* x = in.u[e.j].data() + kGhost;
        const double* y = in.u[e.k].data() + kGhost;
        double* dpc = dp[e.i].data();
        const double v = e.v;
#pragma omp parallel for schedule(static) if (parallel_)
        for (int j = 0; j < n; ++j) dpc[j] += v * x[j] * y[j];
    }
    if (source_) {
        const double t = in.t;
        for (int c = 0; c < nc; ++c) {
            double* dpc = dp[c].data();
            for (int j = 0; j < n; ++j) dpc[j] += source_(c, t, grid_.r(j));
        }
    }
    if (spec_.quasilinear_terms && !(ae_.empty() && be_.empty())) {
        // Toy quasilinear contribution -G_i^{j a b} d_ab w_j with the second
        // time derivative taken from the semilinear right-hand side (lagged).
        const size_t nn = static_cast<size_t>(n);
        std::vector<std::vector<double>> dtt(nc, std::vector<double>(nn));
        std::vector<std::vector<double>> pr(nc, std::vector<double>(nn));
        std::vector<std::vector<double>> urr(nc, std::vector<double>(nn));
        for (int c = 0; c < nc; ++c) {
            for (int j = 0; j < n; ++j) dtt[c][j] = dp[c][j];
            const double* pp = in.p[c].data() + kGhost;
            const double* up = in.u[c].data() + kGhost;
            if (parallel_)
                kernels::radial_derivative(pp, pr[c].data(), n, grid_.dr);
            else
                kernels::radial_derivative_serial(pp, pr[c].data(), n, grid_.dr);
            const double idr2 = 1.0 / (grid_.dr * grid_.dr);
            for (int j = 0; j < n; ++j)
                urr[c][j] = (up[j + 1] - 2.0 * up[j] + up[j - 1]) * idr2;
        }
        auto d2 = [&](int a, int b, int c, int j) {
            if (a == 0 && b == 0) return dtt[c][j];
            if (a == 1 && b == 1) return urr[c][j];
            return pr[c][j];
        };
        for (const auto& e : ae_) {
            const double* g = dview(e.g, e.k);
            double* dpc = dp[e.i].data();
            for (int j = 0; j < n; ++j)
                dpc[j] -= e.v * g[j] * d2(e.a, e.b, e.j, j);
        }
        for (const auto& e : be_) {
            const double* w = in.u[e.k].data() + kGhost;
            double* dpc = dp[e.i].data();
            for (int j = 0; j < n; ++j)
                dpc[j] -= e.v * w[j] * d2(e.a, e.b, e.j, j);
        }
    }
}

void RadialEvolver::check_blowup() {
    for (int c = 0; c < s_.ncomp; ++c) {
        const double m = kernels::linf(s_.u[c].data() + kGhost, s_.n);
        if (!std::isfinite(m) || m > blowup_threshold_) {
            truncated_ = true;
            truncation_time_ = s_.t;
            return;
        }
    }
}

void RadialEvolver::step() {
    if (truncated_) return;
    const int n = s_.n;
    const int nc = s_.ncomp;
    const double h = grid_.dt();
    // k1
    rhs(s_, du_[0], dp_[0]);
    // k2 at s + h/2 k1
    stage_.t = s_.t + 0.5 * h;
    for (int c = 0; c < nc; ++c) {
        kernels::axpby(s_.u[c].data() + kGhost, du_[0][c].data(), 0.5 * h,
                       stage_.u[c].data() + kGhost, n);
        kernels::axpby(s_.p[c].data() + kGhost, dp_[0][c].data(), 0.5 * h,
                       stage_.p[c].data() + kGhost, n);
    }
    rhs(stage_, du_[1], dp_[1]);
    // k3 at s + h/2 k2
    for (int c = 0; c < nc; ++c) {
        kernels::axpby(s_.u[c].data() + kGhost, du_[1][c].data(), 0.5 * h,
                       stage_.u[c].data() + kGhost, n);
        kernels::axpby(s_.p[c].data() + kGhost, dp_[1][c].data(), 0.5 * h,
                       stage_.p[c].data() + kGhost, n);
    }
    rhs(stage_, du_[2], dp_[2]);
    // k4 at s + h k3
    stage_.t = s_.t + h;
    for (int c = 0; c < nc; ++c) {
        kernels::axpby(s_.u[c].data() + kGhost, du_[2][c].data(), h,
                       stage_.u[c].data() + kGhost, n);
        kernels::axpby(s_.p[c].data() + kGhost, dp_[2][c].data(), h,
                       stage_.p[c].data() + kGhost, n);
    }
    rhs(stage_, du_[3], dp_[3]);
    for (int c = 0; c < nc; ++c) {
        kernels::rk4_accumulate(s_.u[c].data() + kGhost, du_[0][c].data(), du_[1][c].data(),
                                du_[2][c].data(), du_[3][c].data(), h, n);
        kernels::rk4_accumulate(s_.p[c].data() + kGhost, dp_[0][c].data(), dp_[1][c].data(),
                                dp_[2][c].data(), dp_[3][c].data(), h, n);
    }
    s_.t += h;
    check_blowup();
}

Snapshot RadialEvolver::make_snapshot() {
    Snapshot snap;
    snap.t = s_.t;
    rhs(s_, du_[0], dp_[0]);  // also refreshes ghost cells
    snap.u = s_.u;
    snap.p = s_.p;
    snap.a.assign(s_.ncomp, std::vector<double>(s_.n + 2 * kGhost, 0.0));
    for (int c = 0; c < s_.ncomp; ++c) {
        std::copy(dp_[0][c].begin(), dp_[0][c].end(), snap.a[c].begin() + kGhost);
        kernels::fill_ghosts(snap.a[c], s_.n);
    }
    return snap;
}

// --- slice collection ---------------------------------------------------------

namespace {

/// Cubic Lagrange value and derivative at radius r from an array with ghosts.
struct Sample {
    double v, d;
};

Sample sample4(const std::vector<double>& arr, int n, double dr, double r) {
    int base = static_cast<int>(std::floor(r / dr));
    base = std::clamp(base, 0, n - 2);
    const int j0 = base - 1;  // stencil j0..j0+3; ghosts cover j0 = -1
    const double s = r / dr - j0;
    double w[4], dw[4];
    for (int m = 0; m < 4; ++m) {
        double num = 1.0, den = 1.0, dsum = 0.0;
        for (int q = 0; q < 4; ++q) {
            if (q == m) continue;
            den *= (m - q);
            num *= (s - q);
        }
        // derivative of prod (s - q) over q != m
        for (int q = 0; q < 4; ++q) {
            if (q == m) continue;
            double prod = 1.0;
            for (int l = 0; l < 4; ++l) {
                if (l == m || l == q) continue;
                prod *= (s - l);
            }
            dsum += prod;
        }
        w[m] = num / den;
        dw[m] = dsum / den / dr;
    }
    Sample out{0.0, 0.0};
    for (int m = 0; m < 4; ++m) {
        const double val = arr[kGhost + j0 + m];
        out.v += w[m] * val;
        out.d += dw[m] * val;
    }
    return out;
}

struct Hermite {
    double h00, h10, h01, h11;
    Hermite(double t0, double t1, double t) {
        const double h = t1 - t0;
        const double s = h > 0 ? (t - t0) / h : 0.0;
        const double s2 = s * s, s3 = s2 * s;
        h00 = 2 * s3 - 3 * s2 + 1;
        h10 = (s3 - 2 * s2 + s) * h;
        h01 = -2 * s3 + 3 * s2;
        h11 = (s3 - s2) * h;
    }
    double eval(double v0, double d0, double v1, double d1) const {
        return h00 * v0 + h10 * d0 + h01 * v1 + h11 * d1;
    }
};

}  // namespace

SliceCollector::SliceCollector(const SliceRequest& req, int ncomp)
    : req_(req), ncomp_(ncomp) {
    slice_ = build_slice(req.T, req.region, req.n_nodes, req.rule);
    const size_t n = slice_.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), size_t{0});
    std::sort(order_.begin(), order_.end(),
              [&](size_t a, size_t b) { return slice_.t[a] < slice_.t[b]; });
    t_lo_ = slice_.t[order_.front()];
    t_hi_ = slice_.t[order_.back()];
    u_.assign(ncomp, std::vector<double>(n, 0.0));
    ut_.assign(ncomp, std::vector<double>(n, 0.0));
    ur_.assign(ncomp, std::vector<double>(n, 0.0));
}

void SliceCollector::feed(const Snapshot& f0, const Snapshot& f1, const RadialGrid& g) {
    const double eps = 1e-12 * std::max(1.0, std::abs(f1.t));
    while (next_ < order_.size()) {
        const size_t k = order_[next_];
        const double tq = slice_.t[k];
        if (tq > f1.t + eps) break;
        if (tq < f0.t - eps) {  // run started too late for this node
            throw std::runtime_error("slice node precedes run start (coverage hole)");
        }
        const double rq = slice_.r[k];
        const Hermite H(f0.t, f1.t, tq);
        for (int c = 0; c < ncomp_; ++c) {
            const Sample u0 = sample4(f0.u[c], g.n(), g.dr, rq);
            const Sample u1 = sample4(f1.u[c], g.n(), g.dr, rq);
            const Sample p0 = sample4(f0.p[c], g.n(), g.dr, rq);
            const Sample p1 = sample4(f1.p[c], g.n(), g.dr, rq);
            const Sample a0 = sample4(f0.a[c], g.n(), g.dr, rq);
            const Sample a1 = sample4(f1.a[c], g.n(), g.dr, rq);
            u_[c][k] = H.eval(u0.v, p0.v, u1.v, p1.v);
            ut_[c][k] = H.eval(p0.v, a0.v, p1.v, a1.v);
            ur_[c][k] = H.eval(u0.d, p0.d, u1.d, p1.d);
        }
        ++next_;
    }
}

std::vector<FieldJetOnSlice> SliceCollector::take_jets(std::span<const double> masses) const {
    if (!complete())
        throw std::runtime_error("run does not cover hyperboloid T = " + std::to_string(req_.T) +
                                 " (filled " + std::to_string(next_) + "/" +
                                 std::to_string(order_.size()) + " nodes)");
    std::vector<FieldJetOnSlice> jets(ncomp_);
    for (int c = 0; c < ncomp_; ++c) {
        jets[c].slice = slice_;
        jets[c].u = u_[c];
        jets[c].ut = ut_[c];
        jets[c].ur = ur_[c];
        jets[c].mass = masses[c];
    }
    return jets;
}

// --- top-level run -------------------------------------------------------------

RunRecord evolve(const SystemSpec& spec, const RadialGrid& grid,
                 const std::function<double(int, double)>& u0,
                 const std::function<double(int, double)>& u1, const EvolveConfig& cfg,
                 std::vector<SliceCollector>* collectors) {
    RadialEvolver ev(spec, grid);
    ev.set_parallel(cfg.parallel);
    ev.set_blowup_threshold(cfg.blowup_threshold);
    if (cfg.source) ev.set_source(cfg.source);
    ev.set_initial(u0, u1, cfg.t_start);

    RunRecord rec;
    rec.spec = spec;
    rec.grid = grid;

    const double dt = grid.dt();
    const int frame_stride = std::max(1, static_cast<int>(std::round(cfg.frame_spacing / dt)));
    const long total_steps = std::lround(std::ceil((cfg.t_end - cfg.t_start) / dt));

    auto monitor_row = [&](const CauchyState& s) {
        MonitorRow row;
        row.t = s.t;
        for (int c = 0; c < s.ncomp; ++c) {
            row.l2.push_back(kernels::l2_radial(s.u[c].data() + kGhost, s.n, grid.dr));
            row.sup.push_back(kernels::linf(s.u[c].data() + kGhost, s.n));
        }
        row.support_radius = s.support_radius(grid);
        return row;
    };

    Snapshot prev = ev.make_snapshot();
    rec.monitor.push_back(monitor_row(ev.state()));
    if (cfg.store_snapshots) rec.snaps.push_back(prev);
    // let collectors pick up nodes sitting exactly at t_start
    if (collectors)
        for (auto& c : *collectors) c.feed(prev, prev, grid);

    for (long step = 1; step <= total_steps && !ev.truncated(); ++step) {
        ev.step();
        if (ev.truncated()) break;
        if (step % frame_stride == 0 || step == total_steps) {
            Snapshot cur = ev.make_snapshot();
            if (collectors)
                for (auto& c : *collectors) c.feed(prev, cur, grid);
            rec.monitor.push_back(monitor_row(ev.state()));
            if (cfg.store_snapshots) rec.snaps.push_back(cur);
            prev = std::move(cur);
        }
    }
    rec.truncated = ev.truncated();
    rec.truncation_time = ev.truncation_time();
    return rec;
}

std::vector<FieldJetOnSlice> interpolate_to_hyperboloid(const RunRecord& run, double T,
                                                        const Region& region, int n_nodes) {
    if (run.snaps.size() < 2)
        throw std::runtime_error("run has no stored snapshots for interpolation");
    SliceCollector col({T, region, n_nodes}, run.spec.ncomp());
    for (size_t k = 0; k + 1 < run.snaps.size() && !col.complete(); ++k) {
        if (k == 0) col.feed(run.snaps[0], run.snaps[0], run.grid);
        col.feed(run.snaps[k], run.snaps[k + 1], run.grid);
    }
    return col.take_jets(run.spec.masses);
}

std::vector<FieldJetOnSlice> bridge_to_first_hyperboloid(const RunRecord& run, double B,
                                                         int n_nodes) {
    return interpolate_to_hyperboloid(run, B + 1.0, Region::lambda_prime(), n_nodes);
}

DecayFit decay_fit(std::span<const double> T, std::span<const double> sup) {
    if (T.size() != sup.size() || T.size() < 5)
        throw std::invalid_argument("decay fit needs >= 5 points");
    const int n = static_cast<int>(T.size());
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
        if (!(T[i] > 0.0) || !(sup[i] > 0.0))
            throw std::domain_error("decay fit needs positive data");
        x[i] = std::log(T[i]);
        y[i] = std::log(sup[i]);
    }
    const double xm = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double ym = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - xm) * (x[i] - xm);
        sxy += (x[i] - xm) * (y[i] - ym);
    }
    DecayFit fit;
    fit.n = n;
    fit.exponent = sxy / sxx;
    fit.intercept = ym - fit.exponent * xm;
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double e = y[i] - (fit.intercept + fit.exponent * x[i]);
        ss += e * e;
    }
    fit.stderr_ = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
    return fit;
}

std::vector<BootstrapRow> bootstrap_monitor(std::span<const double> s,
                                            const std::vector<std::vector<double>>& energies,
                                            std::span<const int> is_wave,
                                            std::span<const double> ref_sqrt, double C1,
                                            double delta) {
    std::vector<BootstrapRow> rows;
    for (size_t c = 0; c < energies.size(); ++c) {
        for (size_t k = 0; k < s.size(); ++k) {
            BootstrapRow row;
            row.s = s[k];
            row.comp = static_cast<int>(c);
            row.wave = is_wave[c] != 0;
            row.sqrt_e = std::sqrt(std::max(0.0, energies[c][k]));
            row.bound = row.wave ? C1 * ref_sqrt[c]
                                 : C1 * ref_sqrt[c] * std::pow(s[k], delta);
            row.pass = row.sqrt_e <= row.bound + 1e-14;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<double> semilinear_source_l2(const CoefficientTensors& tensors,
                                         std::span<const FieldJetOnSlice> jets) {
    const int nc = static_cast<int>(jets.size());
    std::vector<double> out(nc, 0.0);
    if (nc == 0) return out;
    const auto& s = jets[0].slice;
    for (size_t k = 0; k < s.size(); ++k) {
        for (int i = 0; i < nc; ++i) {
            double F = 0.0;
            auto d = [&](int a, int c) { return a == 0 ? jets[c].ut[k] : jets[c].ur[k]; };
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int j = 0; j < nc; ++j)
                        for (int l = 0; l < nc; ++l)
                            if (double v = tensors.p(i, a, b, j, l); v != 0.0)
                                F += v * d(a, j) * d(b, l);
            for (int a = 0; a < 2; ++a)
                for (int j = 0; j < nc; ++j)
                    for (int l = 0; l < nc; ++l)
                        if (double v = tensors.q(i, a, j, l); v != 0.0)
                            F += v * d(a, j) * jets[l].u[k];
            for (int j = 0; j < nc; ++j)
                for (int l = 0; l < nc; ++l)
                    if (double v = tensors.r(i, j, l); v != 0.0)
                        F += v * jets[j].u[k] * jets[l].u[k];
            out[i] += s.w[k] * F * F;
        }
    }
    for (double& v : out) v = std::sqrt(v);
    return out;
}

}  // namespace hyperfoil
