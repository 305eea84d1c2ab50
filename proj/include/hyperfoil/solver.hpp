#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hyperfoil/energy.hpp"
#include "hyperfoil/geometry.hpp"
#include "hyperfoil/kernels.hpp"
#include "hyperfoil/nullcond.hpp"

namespace hyperfoil {

/// Coupled system layout: j0 wave components (mass 0) followed by k0
/// Klein-Gordon components (mass >= 1).
struct SystemSpec {
    int j0 = 1, k0 = 0;
    std::vector<double> masses;      // size j0 + k0
    CoefficientTensors tensors;      // semilinear + quasilinear coefficients
    bool quasilinear_terms = false;  // G contributes to the equation (toy mode)

    int ncomp() const { return j0 + k0; }
    void validate() const;  // mass ordering, tensor shape, symmetry
};

struct RadialGrid {
    double r_max = 10.0;
    double dr = 0.01;
    double cfl = 0.5;

    int n() const { return static_cast<int>(std::round(r_max / dr)) + 1; }
    double dt() const { return cfl * dr; }
    double r(int j) const { return j * dr; }
    void validate() const;
};

/// Evolution state at one time: per component u and d_t u on the radial grid,
/// stored with ghost cells (physical node j at index kGhost + j).
struct CauchyState {
    double t = 0.0;
    int ncomp = 0, n = 0;
    std::vector<std::vector<double>> u, p;

    void init(int ncomp_, int n_);
    std::span<double> u_phys(int c) { return {u[c].data() + kernels::kGhost, static_cast<size_t>(n)}; }
    std::span<const double> u_phys(int c) const { return {u[c].data() + kernels::kGhost, static_cast<size_t>(n)}; }
    std::span<double> p_phys(int c) { return {p[c].data() + kernels::kGhost, static_cast<size_t>(n)}; }
    std::span<const double> p_phys(int c) const { return {p[c].data() + kernels::kGhost, static_cast<size_t>(n)}; }
    /// Largest radius with |u| above the threshold, over all components.
    double support_radius(const RadialGrid& g, double thresh = 1e-10) const;
};

/// Optional manufactured source f_i(t, r) added to the right-hand side.
using SourceFn = std::function<double(int comp, double t, double r)>;

struct MonitorRow {
    double t = 0.0;
    std::vector<double> l2, sup;  // per component
    double support_radius = 0.0;
};

struct Snapshot {
    double t = 0.0;
    std::vector<std::vector<double>> u, p, a;  // a = d_tt u, with ghosts
};

struct RunRecord {
    SystemSpec spec;
    RadialGrid grid;
    std::vector<MonitorRow> monitor;
    std::vector<Snapshot> snaps;  // only when stored
    bool truncated = false;
    double truncation_time = 0.0;
    uint64_t config_hash = 0;
    uint64_t seed = 0;
};

/// Requested hyperboloid extraction, filled while the run streams past.
struct SliceRequest {
    double T = 3.0;
    Region region = Region::lambda_prime();
    int n_nodes = 2048;
    QuadratureRule rule = QuadratureRule::Midpoint;
};

class SliceCollector {
public:
    SliceCollector(const SliceRequest& req, int ncomp);

    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    const SliceRequest& request() const { return req_; }

    /// Interpolate all nodes with t in (f0.t, f1.t] from the two frames.
    void feed(const Snapshot& f0, const Snapshot& f1, const RadialGrid& g);
    bool complete() const { return next_ == order_.size(); }
    size_t filled() const { return next_; }

    /// Jets per component; throws if the run did not cover the slice.
    std::vector<FieldJetOnSlice> take_jets(std::span<const double> masses) const;

private:
    SliceRequest req_;
    HyperboloidSlice slice_;
    int ncomp_;
    double t_lo_, t_hi_;
    std::vector<size_t> order_;  // node indices sorted by t
    size_t next_ = 0;
    std::vector<std::vector<double>> u_, ut_, ur_;  // [comp][node]
};

struct EvolveConfig {
    double t_start = 3.0;
    double t_end = 10.0;
    double frame_spacing = 0.125;  // at least 4 frames per unit time
    bool store_snapshots = false;
    bool parallel = true;
    double blowup_threshold = 1e6;
    SourceFn source;  // may be empty
};

/// Method-of-lines integrator: classical RK4 over the radial stencil.
class RadialEvolver {
public:
    RadialEvolver(SystemSpec spec, RadialGrid grid);

    CauchyState& state() { return s_; }
    const CauchyState& state() const { return s_; }
    const SystemSpec& spec() const { return spec_; }
    const RadialGrid& grid() const { return grid_; }

    void set_initial(const std::function<double(int, double)>& u0,
                     const std::function<double(int, double)>& u1, double t0);
    void set_source(SourceFn src) { source_ = std::move(src); }
    void set_parallel(bool p) { parallel_ = p; }

    /// d/dt of (u, p) into (du, dp); exposed for direct RHS tests.
    void rhs(const CauchyState& in, std::vector<std::vector<double>>& du,
             std::vector<std::vector<double>>& dp);

    void step();  // one RK4 step of size grid.dt()
    bool truncated() const { return truncated_; }
    double truncation_time() const { return truncation_time_; }

    /// Current acceleration arrays (rhs dp at the current state).
    Snapshot make_snapshot();

private:
    void check_blowup();
    SystemSpec spec_;
    RadialGrid grid_;
    CauchyState s_;
    bool parallel_ = true;
    bool truncated_ = false;
    double truncation_time_ = 0.0;
    SourceFn source_;
    double blowup_threshold_ = 1e6;
    // scratch
    std::vector<std::vector<double>> ur_, lap_, du_[4], dp_[4];
    CauchyState stage_;
    // sparse semilinear entries after radial reduction (a, b in {0=t, 1=r})
    struct PEntry { int i, a, b, j, k; double v; };
    struct QEntry { int i, a, j, k; double v; };
    struct REntry { int i, j, k; double v; };
    struct AEntry { int i, j, a, b, g, k; double v; };
    struct BEntry { int i, j, a, b, k; double v; };
    std::vector<PEntry> pe_;
    std::vector<QEntry> qe_;
    std::vector<REntry> re_;
    std::vector<AEntry> ae_;
    std::vector<BEntry> be_;

public:
    void set_blowup_threshold(double v) { blowup_threshold_ = v; }
};

/// Evolve from t_start to t_end, streaming frames through the collectors and
/// recording the monitor series (and snapshots when configured).
RunRecord evolve(const SystemSpec& spec, const RadialGrid& grid,
                 const std::function<double(int, double)>& u0,
                 const std::function<double(int, double)>& u1, const EvolveConfig& cfg,
                 std::vector<SliceCollector>* collectors);

/// Post-hoc interpolation from a run with stored snapshots.
std::vector<FieldJetOnSlice> interpolate_to_hyperboloid(const RunRecord& run, double T,
                                                        const Region& region, int n_nodes);

/// Slice jets on the first hyperboloid T = B + 1 (coverage t in
/// [B+1, ((B+1)^2+1)/2] must be stored in the run).
std::vector<FieldJetOnSlice> bridge_to_first_hyperboloid(const RunRecord& run, double B,
                                                         int n_nodes);

/// Least-squares slope of log(sup) against log(T), with standard error.
struct DecayFit {
    double exponent = 0.0;
    double stderr_ = 0.0;
    double intercept = 0.0;
    int n = 0;
};

DecayFit decay_fit(std::span<const double> T, std::span<const double> sup);

/// Bootstrap-style energy monitoring: wave components against a flat bound
/// C1 * ref, Klein-Gordon components against C1 * ref * s^delta.
struct BootstrapRow {
    double s = 0.0;
    int comp = 0;
    bool wave = true;
    double sqrt_e = 0.0;
    double bound = 0.0;
    bool pass = true;
};

std::vector<BootstrapRow> bootstrap_monitor(std::span<const double> s,
                                            const std::vector<std::vector<double>>& energies,
                                            std::span<const int> is_wave,
                                            std::span<const double> ref_sqrt, double C1,
                                            double delta);

/// Semilinear source F_i at the nodes of a slice jet set (used for the
/// energy-inequality margin along a run).
std::vector<double> semilinear_source_l2(const CoefficientTensors& tensors,
                                         std::span<const FieldJetOnSlice> jets);

}  // namespace hyperfoil
