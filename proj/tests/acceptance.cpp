// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. `--calibrate` prints the measured cross-backend residuals used to
// freeze the regression tolerances below.

#include "ambec/engine.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

using namespace ambec;

namespace {

int failures = 0;
std::vector<std::string> notes;

void note(const std::string& line) { notes.push_back(line); }

void criterion(const std::string& id, bool passed, const std::string& detail) {
    std::printf("%s %s - %s\n", id.c_str(), passed ? "PASS" : "FAIL", detail.c_str());
    for (const std::string& n : notes) std::printf("    %s\n", n.c_str());
    notes.clear();
    if (!passed) ++failures;
}

const SystemParams& params_fig1() {
    static SystemParams p(100.0, 1e4, {5, 0}, {2, 0});
    return p;
}
const SystemParams& params_fig1d() {
    static SystemParams p(100.0, 1e4, {5, 0}, {-2, 0});
    return p;
}
const SystemParams& params_fig4() {
    static SystemParams p(100.0, 1e4, {10, 0}, {2, 0});
    return p;
}
const SystemParams& params_fig4_flipped() {
    static SystemParams p(100.0, 1e4, {10, 0}, {-2, 0});
    return p;
}
const SystemParams& params_small() {
    static SystemParams p(100.0, 1e4, {2, 0}, {1, 0});
    return p;
}

std::vector<WitnessKind> baseline_kinds() {
    std::vector<WitnessKind> kinds;
    for (WitnessTag tag : {WitnessTag::VarXa, WitnessTag::VarYa, WitnessTag::VarXb,
                           WitnessTag::VarYb, WitnessTag::VarXab, WitnessTag::VarYab,
                           WitnessTag::AmpSq1a, WitnessTag::AmpSq2a, WitnessTag::AmpSq1b,
                           WitnessTag::AmpSq2b, WitnessTag::Da, WitnessTag::Db, WitnessTag::Dab,
                           WitnessTag::HZ1, WitnessTag::HZ2, WitnessTag::Duan})
        kinds.push_back(WitnessKind::simple(tag));
    kinds.push_back(WitnessKind::hoa_a(3));
    kinds.push_back(WitnessKind::hoa_b(3));
    kinds.push_back(WitnessKind::hz1_higher(1, 2));
    kinds.push_back(WitnessKind::hz2_higher(1, 2));
    return kinds;
}

// Every witness served by both backends, with representative orders for the
// parameterized families.
std::vector<WitnessKind> dual_backend_kinds() {
    std::vector<WitnessKind> kinds = baseline_kinds();
    kinds.push_back(WitnessKind::hoa_a(4));
    kinds.push_back(WitnessKind::hoa_b(4));
    kinds.push_back(WitnessKind::hz2_higher(1, 1));
    kinds.push_back(WitnessKind::hz2_higher(1, 3));
    kinds.push_back(WitnessKind::hz2_higher(2, 2));
    return kinds;
}

// A3 regression tolerances: absolute |perturbative - exact| at omega*t = 0.1
// with omega = 100, delta = 1e4, alpha = 2, beta = 1, recorded at the first
// verified run and multiplied by 1.5 headroom. Regenerate with --calibrate.
const std::map<std::string, double> kFrozenResidual = {
    // placeholder: populated by calibration before release
};

// --- A1 ---------------------------------------------------------------------
void a1_baselines() {
    bool ok = true;
    std::string worst;
    double worst_err = 0.0;
    for (const SystemParams* p : {&params_fig1(), &params_fig4()}) {
        // perturbative, tolerance 1e-12
        for (const WitnessKind& kind : baseline_kinds()) {
            const double v = evaluate_perturbative(*p, 0.0, kind).value;
            const double err = std::abs(v - kind.threshold());
            if (err > worst_err) {
                worst_err = err;
                worst = kind.name() + " (perturbative)";
            }
            ok = ok && err < 1e-12;
        }
        // exact, tolerance 1e-9 (plus the exact-only kinds)
        const FockSpace space = FockSpace::build(*p, CutoffPolicy::automatic());
        const StateVector state = coherent_state(space, p->alpha, p->beta);
        std::vector<WitnessKind> kinds = baseline_kinds();
        kinds.push_back(WitnessKind::lee_a(2, 1));
        kinds.push_back(WitnessKind::lee_b(2, 1));
        for (const WitnessKind& kind : kinds) {
            const double v = witness_exact(state, *p, kind).value;
            const double err = std::abs(v - kind.threshold());
            if (err > worst_err) {
                worst_err = err;
                worst = kind.name() + " (exact)";
            }
            ok = ok && err < 1e-9;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "t=0 baselines for fig1/fig4, both backends; worst |error| %.2e (%s)",
                  worst_err, worst.c_str());
    criterion("A1", ok, buf);
}

// --- A2 ---------------------------------------------------------------------
// Identity relations at 100 random draws plus the ODE-integration cross-check.
struct CoefficientOde {
    std::array<Complex, 8> f{}, g{};
};

CoefficientOde ode_rhs(double omega, double delta, const CoefficientOde& y) {
    const Complex I{0, 1};
    const Complex hd = -I * (0.5 * delta);
    CoefficientOde d;
    d.f[0] = hd * y.f[0];
    d.f[1] = hd * y.f[1] - I * omega * std::conj(y.f[0]) * y.g[0];
    d.f[2] = hd * y.f[2] - I * omega * std::conj(y.f[0]) * y.g[1];
    d.f[3] = hd * y.f[3] - I * omega * std::conj(y.f[1]) * y.g[0];
    d.f[4] = hd * y.f[4] - I * omega * std::conj(y.f[0]) * y.g[2];
    d.f[5] = hd * y.f[5] - I * omega * std::conj(y.f[3]) * y.g[0];
    d.f[6] = hd * y.f[6] - I * omega * (std::conj(y.f[0]) * y.g[3] + std::conj(y.f[2]) * y.g[0]);
    d.f[7] = hd * y.f[7] - I * omega * std::conj(y.f[1]) * y.g[1];
    d.g[1] = -I * (0.5 * omega) * y.f[0] * y.f[0];
    d.g[2] = -I * (0.5 * omega) * y.f[0] * y.f[1];
    d.g[3] = -I * omega * y.f[0] * y.f[1];
    d.g[4] = -I * (0.5 * omega) * y.f[0] * y.f[2];
    d.g[5] = -I * (0.5 * omega) * y.f[1] * y.f[1];
    d.g[6] = -I * omega * y.f[0] * y.f[3];
    d.g[7] = -I * omega * y.f[0] * y.f[2];
    return d;
}

CoefficientOde ode_integrate(double omega, double delta, double t, int steps) {
    CoefficientOde y;
    y.f[0] = 1.0;
    y.g[0] = 1.0;
    const double h = t / steps;
    auto step_from = [&](const CoefficientOde& base, double scale, const CoefficientOde& dir) {
        CoefficientOde r;
        for (int i = 0; i < 8; ++i) {
            r.f[i] = base.f[i] + scale * dir.f[i];
            r.g[i] = base.g[i] + scale * dir.g[i];
        }
        return r;
    };
    for (int s = 0; s < steps; ++s) {
        const CoefficientOde k1 = ode_rhs(omega, delta, y);
        const CoefficientOde k2 = ode_rhs(omega, delta, step_from(y, 0.5 * h, k1));
        const CoefficientOde k3 = ode_rhs(omega, delta, step_from(y, 0.5 * h, k2));
        const CoefficientOde k4 = ode_rhs(omega, delta, step_from(y, h, k3));
        for (int i = 0; i < 8; ++i) {
            y.f[i] += h / 6.0 * (k1.f[i] + 2.0 * k2.f[i] + 2.0 * k3.f[i] + k4.f[i]);
            y.g[i] += h / 6.0 * (k1.g[i] + 2.0 * k2.g[i] + 2.0 * k3.g[i] + k4.g[i]);
        }
    }
    return y;
}

void a2_coefficient_identities() {
    std::mt19937 rng(20240915);
    std::uniform_real_distribution<double> omega_dist(1.0, 200.0);
    std::uniform_real_distribution<double> ratio_dist(5.0, 500.0);
    std::uniform_real_distribution<double> wt_dist(0.0, 0.9);
    std::bernoulli_distribution sign(0.5);

    double worst_rel = 0.0;
    bool relations_ok = true;
    for (int i = 0; i < 100; ++i) {
        const double omega = omega_dist(rng);
        const double delta = (sign(rng) ? 1.0 : -1.0) * omega * ratio_dist(rng);
        const double t = wt_dist(rng) / omega;
        const CoefficientSet c = coefficients(SystemParams(omega, delta, {1, 0}, {1, 0}), t);
        const double checks[] = {
            std::abs(c.g2 - 0.5 * c.f1 * c.f2),  std::abs(c.g3 - 0.5 * c.g4),
            std::abs(c.g3 - c.f1 * std::conj(c.f3)), std::abs(c.g5 + 0.25 * c.g7),
            std::abs(c.g5 - 0.5 * c.g8),         std::abs(c.g5 - 0.5 * c.f1 * c.f5),
            std::abs(c.g6 - c.f1 * std::conj(c.f8)), std::abs(c.f3 + 0.5 * c.f4),
            std::abs(c.f5 + 0.5 * c.f6),         std::abs(c.f5 - c.f7 / 3.0)};
        for (double err : checks) relations_ok = relations_ok && err < 1e-12;
    }

    // ODE oracle over several parameter sets with omega*t <= 0.3.
    bool ode_ok = true;
    struct Case { double omega, delta, wt; };
    for (const Case& k : {Case{100.0, 1e4, 0.3}, Case{100.0, 1e4, 0.1},
                          Case{50.0, -2e3, 0.25}, Case{7.0, 300.0, 0.2}}) {
        const double t = k.wt / k.omega;
        const CoefficientSet c = coefficients(SystemParams(k.omega, k.delta, {1, 0}, {1, 0}), t);
        const CoefficientOde o = ode_integrate(k.omega, k.delta, t, 20000);
        for (int i = 1; i <= 8; ++i) {
            const double err = std::max(std::abs(c.f(i) - o.f[i - 1]),
                                        std::abs(c.g(i) - o.g[i - 1]));
            worst_rel = std::max(worst_rel, err);
            ode_ok = ode_ok && err < 1e-8;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "coefficient relations at 100 draws (1e-12) and ODE oracle (1e-8); "
                  "worst oracle gap %.2e", worst_rel);
    criterion("A2", relations_ok && ode_ok, buf);
}

// --- A3 ---------------------------------------------------------------------
void a3_cross_backend(bool calibrate) {
    const TimeGrid grid({0.1});
    CompareSettings settings;
    settings.ladder = {0.2, 0.1, 0.05, 0.025};

    bool ok = true;
    double worst_slope = 1e9;
    std::string worst_kind;
    if (calibrate) std::printf("calibration: residuals at omega_t = 0.1 (x1.5 headroom)\n");
    for (const WitnessKind& kind : dual_backend_kinds()) {
        const ComparisonReport report = compare(params_small(), grid, kind, settings);
        const double at_01 = report.residuals[0];
        if (calibrate) {
            std::printf("    {\"%s\", %.6e},\n", kind.name().c_str(), 1.5 * at_01);
            continue;
        }
        if (report.slope < worst_slope) {
            worst_slope = report.slope;
            worst_kind = kind.name();
        }
        ok = ok && report.slope >= 3.0;
        const auto frozen = kFrozenResidual.find(kind.name());
        if (frozen != kFrozenResidual.end())
            ok = ok && at_01 <= frozen->second;
        else
            ok = false; // every dual-backend witness must carry a frozen tolerance
    }
    if (calibrate) return;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "ladder slopes >= 3 and residuals at omega_t=0.1 within frozen tolerances; "
                  "worst slope %.2f (%s)", worst_slope, worst_kind.c_str());
    criterion("A3", ok, buf);
}

// --- A4 ---------------------------------------------------------------------
void a4_figure_signs() {
    const TimeGrid grid = TimeGrid::uniform(0.5, 200);
    bool ok = true;
    auto series_for = [&](const SystemParams& p, WitnessKind kind) {
        const std::array<WitnessKind, 1> kinds{kind};
        return sweep(p, grid, kinds, Backend::Perturbative)[0];
    };
    auto dips = [&](const SystemParams& p, WitnessTag tag) {
        return !regions(series_for(p, WitnessKind::simple(tag))).intervals.empty();
    };
    auto min_of = [&](const SystemParams& p, WitnessKind kind) {
        const auto s = series_for(p, kind);
        double m = s.values[0];
        for (double v : s.values) m = std::min(m, v);
        return m;
    };

    // fig1: X_a squeezed somewhere; both molecular quadratures squeezed.
    ok = ok && dips(params_fig1(), WitnessTag::VarXa);
    ok = ok && dips(params_fig1(), WitnessTag::VarXb);
    ok = ok && dips(params_fig1(), WitnessTag::VarYb);
    note("fig1: VarXa/VarXb/VarYb all dip below 0.25");

    // fig1d: flipped molecular phase squeezes Y_a.
    ok = ok && dips(params_fig1d(), WitnessTag::VarYa);
    note("fig1d: VarYa dips below 0.25");

    // fig2: amplitude-squared squeezing in both quadratures of both modes.
    for (WitnessTag tag : {WitnessTag::AmpSq1a, WitnessTag::AmpSq2a, WitnessTag::AmpSq1b,
                           WitnessTag::AmpSq2b})
        ok = ok && dips(params_fig4(), tag);
    note("fig2: AmpSq1a/AmpSq2a/AmpSq1b/AmpSq2b all negative somewhere");

    // fig3: molecular and compound antibunching over >= 0.1 of the sweep.
    const double len_db = regions(series_for(params_fig4(), WitnessKind::simple(WitnessTag::Db)))
                              .total_length();
    const double len_dab = regions(series_for(params_fig4(), WitnessKind::simple(WitnessTag::Dab)))
                               .total_length();
    ok = ok && len_db >= 0.1 && len_dab >= 0.1;
    {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "fig3: Db negative over %.3f, Dab over %.3f", len_db,
                      len_dab);
        note(buf);
    }

    // fig3d: flipping the molecular phase grows the D_a region.
    const double len_da = regions(series_for(params_fig4(), WitnessKind::simple(WitnessTag::Da)))
                              .total_length();
    const double len_da_flipped =
        regions(series_for(params_fig4_flipped(), WitnessKind::simple(WitnessTag::Da)))
            .total_length();
    ok = ok && len_da_flipped > len_da;
    {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "fig3d: Da region grows %.3f -> %.3f", len_da,
                      len_da_flipped);
        note(buf);
    }

    // fig4: entangled at every sampled time by HZ1 and HZ2; Duan silent.
    const auto hz1 = series_for(params_fig4(), WitnessKind::simple(WitnessTag::HZ1));
    const auto hz2 = series_for(params_fig4(), WitnessKind::simple(WitnessTag::HZ2));
    const auto duan = series_for(params_fig4(), WitnessKind::simple(WitnessTag::Duan));
    bool hz_all = true, duan_none = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        hz_all = hz_all && hz1.values[i] < 0.0 && hz2.values[i] < 0.0;
        duan_none = duan_none && duan.values[i] >= 0.0;
    }
    ok = ok && hz_all && duan_none;
    note("fig4: HZ1/HZ2 negative at every sample; Duan never detects");

    // fig5: nonclassicality deepens with the order.
    const double hoa_a3 = min_of(params_fig4(), WitnessKind::hoa_a(3));
    const double hoa_a4 = min_of(params_fig4(), WitnessKind::hoa_a(4));
    const double hoa_b3 = min_of(params_fig4(), WitnessKind::hoa_b(3));
    const double hoa_b4 = min_of(params_fig4(), WitnessKind::hoa_b(4));
    ok = ok && std::abs(hoa_a4) > std::abs(hoa_a3) && hoa_a4 < 0.0 && hoa_a3 < 0.0;
    ok = ok && std::abs(hoa_b4) > std::abs(hoa_b3) && hoa_b4 < 0.0 && hoa_b3 < 0.0;
    const double hz2m1 = min_of(params_fig4(), WitnessKind::hz2_higher(1, 1));
    const double hz2m2 = min_of(params_fig4(), WitnessKind::hz2_higher(1, 2));
    const double hz2m3 = min_of(params_fig4(), WitnessKind::hz2_higher(1, 3));
    ok = ok && hz2m3 < hz2m2 && hz2m2 < hz2m1 && hz2m1 < 0.0;
    {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "fig5: |min HOA| grows with order (a: %.2e->%.2e, b: %.2e->%.2e); "
                      "HZ2 minima deepen over m=1..3", hoa_a3, hoa_a4, hoa_b3, hoa_b4);
        note(buf);
    }

    criterion("A4", ok, "figure-sign suite on the perturbative backend");
}

// --- A5 ---------------------------------------------------------------------
void a5_reduction_identities() {
    const TimeGrid grid = TimeGrid::uniform(0.5, 200);
    double worst = 0.0;
    for (const SystemParams* p : {&params_fig1(), &params_fig4(), &params_fig4_flipped()}) {
        for (double omega_t : grid.samples()) {
            const double t = p->rescale(omega_t);
            const CoefficientSet c = coefficients(*p, t);
            const double hoa2 =
                evaluate_perturbative(c, p->alpha, p->beta, WitnessKind::hoa_a(2));
            const double da = evaluate_perturbative(c, p->alpha, p->beta,
                                                    WitnessKind::simple(WitnessTag::Da));
            const double hz2h =
                evaluate_perturbative(c, p->alpha, p->beta, WitnessKind::hz2_higher(1, 1));
            const double hz2 = evaluate_perturbative(c, p->alpha, p->beta,
                                                     WitnessKind::simple(WitnessTag::HZ2));
            worst = std::max({worst, std::abs(hoa2 - da), std::abs(hz2h - hz2)});
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf),
                  "HOAa(2) == Da and HZ2Higher(1,1) == HZ2 over preset grids; worst gap %.2e",
                  worst);
    criterion("A5", worst < 1e-12, buf);
}

// --- A6 ---------------------------------------------------------------------
void a6_conservation() {
    const SystemParams& p = params_small();
    const FockSpace space = FockSpace::build(p, CutoffPolicy::automatic());
    const Hamiltonian h(space, p.omega, p.delta);
    const StateVector start = coherent_state(space, p.alpha, p.beta);

    auto charge = [](const StateVector& s) {
        return moment(s, 1, 1, 0, 0).real() + 2.0 * moment(s, 0, 0, 1, 1).real();
    };
    auto energy = [&](const StateVector& s) {
        return 0.5 * p.delta * moment(s, 1, 1, 0, 0).real() +
               p.omega * moment(s, 2, 0, 0, 1).real();
    };

    const StateVector end = propagate(start, h, p.rescale(0.5));
    const double norm_drift = std::abs(end.norm() - 1.0);
    const double charge_drift =
        std::abs(charge(end) - charge(start)) / std::abs(charge(start));
    const double energy_drift =
        std::abs(energy(end) - energy(start)) / std::abs(energy(start));

    // 25% cutoff bump: every witness moves by less than 1e-6.
    const FockSpace bumped_space(static_cast<int>(space.cutoff_a() * 1.25) + 1,
                                 static_cast<int>(space.cutoff_b() * 1.25) + 1);
    const Hamiltonian bumped_h(bumped_space, p.omega, p.delta);
    const StateVector bumped_end =
        propagate(coherent_state(bumped_space, p.alpha, p.beta), bumped_h, p.rescale(0.5));
    double worst_shift = 0.0;
    std::vector<WitnessKind> kinds = dual_backend_kinds();
    kinds.push_back(WitnessKind::lee_a(2, 1));
    kinds.push_back(WitnessKind::lee_b(2, 1));
    kinds.push_back(WitnessKind::hz1_higher(2, 2));
    for (const WitnessKind& kind : kinds)
        worst_shift = std::max(worst_shift,
                               std::abs(witness_exact(end, p, kind).value -
                                        witness_exact(bumped_end, p, kind).value));

    const bool ok = norm_drift < 1e-9 && charge_drift < 1e-8 && energy_drift < 1e-8 &&
                    worst_shift < 1e-6;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "norm drift %.1e (<1e-9), charge drift %.1e, energy drift %.1e (<1e-8 rel), "
                  "cutoff bump shift %.1e (<1e-6)",
                  norm_drift, charge_drift, energy_drift, worst_shift);
    criterion("A6", ok, buf);
}

// --- A7 ---------------------------------------------------------------------
// Frozen on the first verified run: |pert - exact| for VarXa at omega_t = 0.1
// with the fig1 parameters, x1.5 headroom. Regenerate with --calibrate.
constexpr double kFig1VarXaResidualAt01 = 0.0; // placeholder

void a7_exact_overlay(bool calibrate) {
    const SystemParams& p = params_fig1();
    const TimeGrid grid = TimeGrid::uniform(0.5, 20);
    const std::array<WitnessKind, 1> kinds{WitnessKind::simple(WitnessTag::VarXa)};

    ExactSettings exact;
    const auto both = sweep(p, grid, kinds, Backend::Both, exact);
    const auto& pert = both[0].values;
    const auto& num = both[1].values;

    if (calibrate) {
        double at_01 = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (std::abs(grid[i] - 0.1) < 1e-12) at_01 = std::abs(pert[i] - num[i]);
        std::printf("calibration: fig1 VarXa residual at omega_t=0.1 -> %.6e (x1.5 = %.6e)\n",
                    at_01, 1.5 * at_01);
        return;
    }

    bool within = true;
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double residual = std::abs(pert[i] - num[i]);
        const double budget = kFig1VarXaResidualAt01 * std::pow(grid[i] / 0.1, 4.0);
        worst_ratio = std::max(worst_ratio, residual / budget);
        within = within && residual <= budget;
    }

    bool dip = false;
    for (double v : num) dip = dip || v < 0.25;

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "exact VarXa overlay at 20 points within the (omega_t)^4-scaled frozen "
                  "tolerance (worst ratio %.2f); exact dip below 0.25 %s",
                  worst_ratio, dip ? "reproduced" : "missing");
    criterion("A7", within && dip, buf);
}

} // namespace

int main(int argc, char** argv) {
    const bool calibrate = argc > 1 && std::strcmp(argv[1], "--calibrate") == 0;
    if (calibrate) {
        a3_cross_backend(true);
        a7_exact_overlay(true);
        return 0;
    }
    a1_baselines();
    a2_coefficient_identities();
    a3_cross_backend(false);
    a4_figure_signs();
    a5_reduction_identities();
    a6_conservation();
    a7_exact_overlay(false);
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
