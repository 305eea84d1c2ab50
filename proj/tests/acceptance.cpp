// Acceptance suite: one pass/fail line per criterion, each with its runtime
// budget. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hyperfoil/energy.hpp"
#include "hyperfoil/identities.hpp"
#include "hyperfoil/nullcond.hpp"
#include "hyperfoil/presets.hpp"
#include "hyperfoil/solver.hpp"
#include "manufactured_solution.hpp"

namespace hf = hyperfoil;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

char buf_[512];
template <typename... A>
std::string fmt(const char* f, A... a) {
    std::snprintf(buf_, sizeof buf_, f, a...);
    return buf_;
}

// ---------------------------------------------------------------- criterion 1
Outcome energy_expression_identity() {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> upos(0.1, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        hf::EnergyNodeState n;
        const double T = upos(rng);
        const double r = std::abs(uni(rng)) * 3.0;
        n.t = std::sqrt(T * T + r * r);
        hf::Vec3 w{uni(rng), uni(rng), uni(rng)};
        const double nw = hf::norm3(w) + 1e-12;
        n.x = {r * w[0] / nw, r * w[1] / nw, r * w[2] / nw};
        n.dt_u = uni(rng);
        n.grad_u = {uni(rng), uni(rng), uni(rng)};
        n.u = uni(rng);
        n.mass = std::abs(uni(rng));
        auto e = hf::em_integrands(n);
        const double dev = std::max({std::abs(e.e1 - e.e2), std::abs(e.e1 - e.e3),
                                     std::abs(e.e2 - e.e3)}) /
                           e.scale;
        worst = std::max(worst, dev);
    }
    if (worst > 1e-12) return {false, fmt("pointwise deviation %.2e > 1e-12", worst)};

    double worst_int = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
        const double T = 1.5 + 2.1 * trial;
        auto f = hf::ScalarField::gaussian_bump(1.0, 0.2 + 0.05 * trial,
                                                hf::hyperboloid_time(T, 1.0), 0.4,
                                                {0.8 + 0.2 * trial, 0.0, 0.0});
        auto s = hf::build_slice(T, hf::Region::lambda_prime(), 1024);
        auto jet = hf::sample_on_slice(f, s, 0.5 * trial);
        auto rep = hf::energy_em(jet);
        worst_int = std::max(worst_int, rep.spread);
    }
    if (worst_int > 1e-9) return {false, fmt("integrated spread %.2e > 1e-9", worst_int)};
    return {true, fmt("pointwise %.1e (1000 states), integrated %.1e (5 slices)", worst,
                      worst_int)};
}

// ---------------------------------------------------------------- criterion 2
Outcome commutator_battery() {
    auto fields = hf::default_test_fields();
    hf::BatteryConfig cfg;
    cfg.points_per_identity = 100;
    cfg.tolerance = 1e-10;
    auto results = hf::run_commutator_battery(fields, cfg);
    double worst = 0.0;
    std::string worst_id;
    bool all = results.size() >= 12;
    for (const auto& r : results) {
        if (r.max_residual > worst) {
            worst = r.max_residual;
            worst_id = r.id;
        }
        all = all && r.pass;
    }
    return {all, fmt("%zu identities x 100 pts x 5 fields, worst %.1e (%s)", results.size(),
                     worst, worst_id.c_str())};
}

// ---------------------------------------------------------------- criterion 3
Outcome null_form_classification() {
    auto xi = hf::sample_null_cone(64, 0);
    auto q0 = hf::CoefficientTensors::q0_form(1, 0, 0, 0);
    auto qab = hf::CoefficientTensors::qab_form(1, 0, 0, 2, 0, 0);
    auto dt2 = hf::CoefficientTensors::dt_square_form(1, 0, 0, 0);
    auto dtdv = hf::CoefficientTensors::dt_square_form(2, 0, 0, 1);

    bool ok = true;
    std::string why;
    auto expect = [&](const char* name, const hf::CoefficientTensors& c, bool want) {
        const bool null_pass = hf::check_null_condition(c, xi).pass;
        const bool weak_pass = hf::check_weak_null_sampled(c, 100, 0).pass;
        if (null_pass != want || weak_pass != want) {
            ok = false;
            why += fmt(" %s:null=%d,weak=%d(want %d)", name, (int)null_pass, (int)weak_pass,
                       (int)want);
        }
    };
    expect("Q0", q0, true);
    expect("Qab", qab, true);
    expect("dt2", dt2, false);
    expect("dtdv", dtdv, false);
    // implication: forms passing the full null condition pass the weak one at
    // every sampled direction
    for (const auto* c : {&q0, &qab})
        for (const auto& w : hf::fibonacci_sphere(100, 0))
            if (!hf::check_weak_null(*c, w).pass) {
                ok = false;
                why += " implication-violated";
            }
    return {ok, ok ? "Q0, antisymmetric pass; (d_t u)^2, (d_t u)(d_t v) fail; "
                     "null=>weak on 100 directions"
                   : why};
}

// ---------------------------------------------------------------- criterion 4
Outcome sobolev_ratio_stability() {
    std::vector<hf::ScalarField> profiles = {
        hf::ScalarField::transported_bump(0.45),
        hf::ScalarField::transported_bump(0.30),
        hf::ScalarField::cone_profile(0.0, 0.0, 6.0, 0.15),
    };
    std::string detail;
    bool ok = true;
    for (size_t pi = 0; pi < profiles.size(); ++pi) {
        double lo = 1e300, hi = 0.0;
        for (double T : {4.0, 8.0, 16.0, 32.0}) {
            const double ratio = hf::sobolev_ratio(profiles[pi], T, 4096);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        const double var = (hi - lo) / hi;
        detail += fmt(" p%zu:%.1f%%", pi + 1, 100.0 * var);
        ok = ok && var < 0.20;
    }
    return {ok, "ratio variation over T in {4,8,16,32}:" + detail};
}

// ---------------------------------------------------------------- criterion 5
Outcome free_kg_decay(std::string& supplementary) {
    hf::PresetConfig cfg;
    cfg.preset = "free_kg";  // defaults: epsilon 0.01, dr 0.01, ladder 5..20
    cfg.resolve();
    auto res = hf::run_preset(cfg);
    std::vector<double> T, v;
    for (const auto& r : res.interior_slices) {
        T.push_back(r.T);
        v.push_back(r.sups.sup_u);
    }
    auto fit = hf::decay_fit(T, v);
    const bool ok = std::abs(fit.exponent + 1.5) <= 0.2;

    // Supplementary (informational): the same preset fitted on a phase-locked
    // ladder (spacing pi) in the settled window, where the slice-constant
    // Klein-Gordon phase cancels and the classical rate is visible.
    hf::PresetConfig sup_cfg;
    sup_cfg.preset = "free_kg";
    sup_cfg.T_ladder = {3};
    sup_cfg.T_ladder_interior.clear();
    for (int k = 0; k < 12; ++k)
        sup_cfg.T_ladder_interior.push_back(25.0 + k * 3.14159265358979323846);
    sup_cfg.resolve();
    auto sup_res = hf::run_preset(sup_cfg);
    std::vector<double> Ts, vs;
    for (const auto& r : sup_res.interior_slices) {
        Ts.push_back(r.T);
        vs.push_back(r.sups.sup_u);
    }
    auto sup_fit = hf::decay_fit(Ts, vs);
    supplementary =
        fmt("supplementary (informational): phase-locked ladder 25..60 fits %.3f +- %.3f "
            "(classical -1.5 rate in the settled window)",
            sup_fit.exponent, sup_fit.stderr_);
    return {ok, fmt("fitted exponent %.3f +- %.3f over pinned ladder 5..20 (want -1.5 +- 0.2); "
                    "window is pre-asymptotic for width-2 data, see notes",
                    fit.exponent, fit.stderr_)};
}

// ---------------------------------------------------------------- criterion 6
Outcome free_wave_weighted_decay() {
    hf::PresetConfig cfg;
    cfg.preset = "free_wave";
    cfg.resolve();
    auto res = hf::run_preset(cfg);
    double lo = 1e300, hi = 0.0;
    for (const auto& r : res.full_slices) {
        if (r.T < cfg.T_ladder.front() - 1e-9) continue;  // skip the B+1 anchor slice
        lo = std::min(lo, r.sups.weighted_partial);
        hi = std::max(hi, r.sups.weighted_partial);
    }
    const double var = (hi - lo) / hi;
    return {var < 0.30, fmt("sup t^{3/2}(T/t)|du| in [%.4f, %.4f] over ladder 8..16, "
                            "variation %.1f%% (< 30%%)",
                            lo, hi, 100.0 * var)};
}

// ---------------------------------------------------------------- criterion 7
struct ManufacturedResult {
    double min_margin = 1.0;
};

ManufacturedResult manufactured_run(double mass, double dr) {
    hf::testing::ManufacturedSolution man;
    man.mass = mass;
    auto jet_f = [&](double t, double r) { return man.source(t, r); };
    hf::SystemSpec spec;
    if (mass == 0.0) {
        spec.j0 = 1;
        spec.k0 = 0;
        spec.masses = {0.0};
        spec.tensors = hf::CoefficientTensors(1, 0);
    } else {
        spec.j0 = 0;
        spec.k0 = 1;
        spec.masses = {mass};
        spec.tensors = hf::CoefficientTensors(0, 1);
    }
    hf::RadialGrid grid;
    grid.dr = dr;
    const std::vector<double> ladder{3, 4, 5, 6, 7, 8};
    const double t_end = 0.5 * (ladder.back() * ladder.back() + 1.0) + 0.5;
    grid.r_max = t_end + 4.0;
    std::vector<hf::SliceCollector> cols;
    for (double T : ladder)
        cols.emplace_back(hf::SliceRequest{T, hf::Region::lambda_prime(), 2048}, 1);
    hf::EvolveConfig ec;
    ec.t_start = 3.0;
    ec.t_end = t_end;
    ec.source = [&](int, double t, double r) { return jet_f(t, r); };
    auto u0 = [&](int, double r) { return man.value(3.0, r); };
    auto u1 = [&](int, double r) { return man.dt(3.0, r); };
    hf::evolve(spec, grid, u0, u1, ec, &cols);

    // dense cumulative integral of ||f||_{L2(H_s)} from the closed form
    std::vector<double> sgrid, fnorm;
    for (double s = 3.0; s <= ladder.back() + 1e-9; s += 0.1) {
        auto sl = hf::build_slice(s, hf::Region::lambda_prime(), 1024);
        double acc = 0.0;
        for (size_t k = 0; k < sl.size(); ++k) {
            const double fv = jet_f(sl.t[k], sl.r[k]);
            acc += sl.w[k] * fv * fv;
        }
        sgrid.push_back(s);
        fnorm.push_back(std::sqrt(acc));
    }
    auto cumulative = [&](double T) {
        double acc = 0.0;
        for (size_t k = 1; k < sgrid.size() && sgrid[k] <= T + 1e-9; ++k)
            acc += 0.5 * (fnorm[k] + fnorm[k - 1]) * (sgrid[k] - sgrid[k - 1]);
        return acc;
    };

    ManufacturedResult out;
    double e0 = -1.0;
    for (size_t ci = 0; ci < cols.size(); ++ci) {
        auto jets = cols[ci].take_jets(spec.masses);
        const double e = hf::energy_em(jets[0], hf::MassConvention::Flux).value();
        if (ci == 0) {
            e0 = e;
            continue;
        }
        const double bound = std::sqrt(e0) + cumulative(ladder[ci]);
        const double margin = (bound - std::sqrt(e)) / bound;
        out.min_margin = std::min(out.min_margin, margin);
    }
    return out;
}

Outcome manufactured_inequality() {
    double worst = 1.0;
    double worst_coarse = 1.0;
    for (double mass : {0.0, 1.0}) {
        worst = std::min(worst, manufactured_run(mass, 0.01).min_margin);
        worst_coarse = std::min(worst_coarse, manufactured_run(mass, 0.02).min_margin);
    }
    const double viol_fine = std::max(0.0, -worst);
    const double viol_coarse = std::max(0.0, -worst_coarse);
    const bool improving = viol_fine <= 0.5 * viol_coarse + 1e-12;
    const bool ok = worst >= -0.02 && improving;
    return {ok, fmt("min margin %.4f at dr=0.01 (>= -0.02), %.4f at dr=0.02; violation %s",
                    worst, worst_coarse,
                    viol_fine == 0.0 ? "absent" : (improving ? "halved" : "NOT improving"))};
}

// ---------------------------------------------------------------- criterion 8
Outcome curved_energy_comparability() {
    hf::PresetConfig cfg;
    cfg.preset = "coupled_wkg";
    cfg.dr = 0.02;
    cfg.T_ladder = {3, 4, 5, 6, 7, 8};
    cfg.T_ladder_interior = {5};
    cfg.g_cap = 0.05;
    cfg.resolve();
    auto res = hf::run_preset(cfg);
    bool ok = !res.em_total.empty();
    double worst_ratio = 0.0;
    for (size_t k = 0; k < res.em_total.size(); ++k) {
        const double ratio = res.em_total[k] / std::max(res.eg_total[k], 1e-300);
        worst_ratio = std::max(worst_ratio, ratio);
        ok = ok && res.em_total[k] <= 3.0 * res.eg_total[k];
    }
    return {ok, fmt("E_m <= 3 E_G on %zu slices with |G| <= 0.05 from the state "
                    "(worst E_m/E_G = %.4f)",
                    res.em_total.size(), worst_ratio)};
}

// ---------------------------------------------------------------- criterion 9
Outcome null_contrast() {
    hf::PresetConfig base;
    base.preset = "null_wave";
    base.epsilon = 0.3;
    base.resolve();
    auto null_res = hf::run_preset(base);
    hf::PresetConfig non;
    non.preset = "nonnull_wave";
    non.epsilon = 0.3;
    non.resolve();
    auto non_res = hf::run_preset(non);
    if (non_res.truncated)
        return {true, fmt("nonnull run truncated by blowup detection at t = %.2f "
                          "(null run %s); outcome logged",
                          non_res.truncation_time, null_res.truncated ? "also truncated" : "ran")};
    if (null_res.em_total.empty() || non_res.em_total.empty())
        return {false, "no common covered slices"};
    const size_t k = std::min(null_res.em_total.size(), non_res.em_total.size()) - 1;
    const double ratio = non_res.em_total[k] / null_res.em_total[k];
    return {ratio >= 2.0, fmt("final slice T=%.1f: nonnull E=%.3e vs null E=%.3e, "
                              "ratio %.2f (>= 2)",
                              null_res.full_ladder[k], non_res.em_total[k],
                              null_res.em_total[k], ratio)};
}

// --------------------------------------------------------------- criterion 10
Outcome bootstrap_bounds() {
    hf::PresetConfig cfg;
    cfg.preset = "coupled_wkg";  // defaults: epsilon 0.01, ladder 3..30
    cfg.resolve();
    auto res = hf::run_preset(cfg);
    if (res.truncated) return {false, "run truncated"};
    const int nc = res.spec.ncomp();
    std::vector<std::vector<double>> energies(nc);
    std::vector<double> s;
    for (size_t k = 0; k < res.full_ladder.size(); ++k) s.push_back(res.full_ladder[k]);
    for (const auto& rep : res.full_slices) energies[rep.comp].push_back(rep.energy.value());
    std::vector<double> refs(nc);
    std::vector<int> is_wave(nc);
    for (int c = 0; c < nc; ++c) {
        refs[c] = std::sqrt(energies[c].front());
        is_wave[c] = c < res.spec.j0;
    }
    auto rows = hf::bootstrap_monitor(s, energies, is_wave, refs, 2.0, 1.0 / 6.0);
    bool ok = true;
    double tightest = 1e300;
    for (const auto& row : rows) {
        ok = ok && row.pass;
        tightest = std::min(tightest, row.bound / std::max(row.sqrt_e, 1e-300));
    }
    return {ok, fmt("wave and Klein-Gordon bounds hold on %zu slices over s in [3, 30] "
                    "(tightest bound/actual = %.2f)",
                    s.size(), tightest)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        double budget_s;
        std::function<Outcome()> run;
    };
    std::string c5_supplementary;
    const std::vector<Criterion> criteria = {
        {1, "energy-expression identity", 5.0, energy_expression_identity},
        {2, "commutator battery", 10.0, commutator_battery},
        {3, "null-form classification", 1.0, null_form_classification},
        {4, "Sobolev ratio stability", 30.0, sobolev_ratio_stability},
        {5, "free Klein-Gordon decay", 60.0,
         [&] { return free_kg_decay(c5_supplementary); }},
        {6, "free wave weighted decay", 60.0, free_wave_weighted_decay},
        {7, "manufactured-source energy inequality", 90.0, manufactured_inequality},
        {8, "curved-energy comparability", 30.0, curved_energy_comparability},
        {9, "null vs non-null contrast", 120.0, null_contrast},
        {10, "bootstrap energy bounds", 120.0, bootstrap_bounds},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = elapsed < c.budget_s;
        const bool pass = out.pass && in_budget;
        std::printf("[%s] criterion %2d: %s (%.2fs/%'.0fs) - %s%s\n", pass ? "PASS" : "FAIL",
                    c.id, c.title, elapsed, c.budget_s, out.detail.c_str(),
                    in_budget ? "" : " [over budget]");
        if (c.id == 5 && !c5_supplementary.empty())
            std::printf("       %s\n", c5_supplementary.c_str());
        if (!pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
