#include "ambec/engine.hpp"

#include <algorithm>
#include <cmath>

namespace ambec {

double NonclassicalRegion::total_length() const {
    double total = 0.0;
    for (const auto& [lo, hi] : intervals) total += hi - lo;
    return total;
}

namespace {

// Exact-backend evaluation of several kinds over a grid: one sequential
// propagation, witnesses read off at each arrival.
std::vector<std::vector<double>> exact_values(const SystemParams& params, const TimeGrid& grid,
                                              std::span<const WitnessKind> kinds,
                                              const ExactSettings& exact) {
    const FockSpace space = FockSpace::build(params, exact.cutoffs);
    const Hamiltonian hamiltonian(space, params.omega, params.delta);
    PropagationSettings prop;
    prop.tolerance = exact.tolerance;
    prop.tail_bound = exact.tail_bound;

    std::vector<std::vector<double>> values(kinds.size());
    for (auto& v : values) v.reserve(grid.size());

    StateVector state = coherent_state(space, params.alpha, params.beta);
    for (double omega_t : grid.samples()) {
        const double t = params.rescale(omega_t);
        if (t > state.time) state = propagate(state, hamiltonian, t, prop);
        for (std::size_t k = 0; k < kinds.size(); ++k)
            values[k].push_back(witness_exact(state, params, kinds[k]).value);
    }
    return values;
}

std::vector<double> perturbative_values(const SystemParams& params, const TimeGrid& grid,
                                        const WitnessKind& kind,
                                        const std::optional<CoefficientFault>& fault) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double omega_t : grid.samples()) {
        CoefficientSet c = coefficients(params, params.rescale(omega_t));
        if (fault) c = apply_fault(c, *fault);
        out.push_back(evaluate_perturbative(c, params.alpha, params.beta, kind));
    }
    return out;
}

} // namespace

std::vector<WitnessSeries> sweep(const SystemParams& params, const TimeGrid& grid,
                                 std::span<const WitnessKind> kinds, Backend backend,
                                 const ExactSettings& exact) {
    for (const WitnessKind& kind : kinds) kind.check_orders();

    std::vector<WitnessSeries> out;
    if (kinds.empty()) return out;

    std::vector<std::vector<double>> exact_cols;
    if (backend != Backend::Perturbative) exact_cols = exact_values(params, grid, kinds, exact);

    for (std::size_t k = 0; k < kinds.size(); ++k) {
        if (backend != Backend::Exact)
            out.push_back({kinds[k], grid, perturbative_values(params, grid, kinds[k], {}),
                           Backend::Perturbative});
        if (backend != Backend::Perturbative)
            out.push_back({kinds[k], grid, std::move(exact_cols[k]), Backend::Exact});
    }
    return out;
}

NonclassicalRegion regions(const WitnessSeries& series) {
    NonclassicalRegion region;
    region.kind = series.kind;
    region.threshold = series.kind.threshold();
    const auto& grid = series.grid;
    const auto& v = series.values;
    const double c = region.threshold;

    bool inside = v[0] < c;
    double start = grid[0];
    for (std::size_t i = 1; i < v.size(); ++i) {
        const bool below = v[i] < c;
        if (below == inside) continue;
        // Crossing between samples i-1 and i; locate by linear interpolation.
        const double frac = (c - v[i - 1]) / (v[i] - v[i - 1]);
        const double x = grid[i - 1] + frac * (grid[i] - grid[i - 1]);
        if (below) {
            start = x;
        } else {
            region.intervals.emplace_back(start, x);
        }
        inside = below;
    }
    if (inside) region.intervals.emplace_back(start, grid[grid.size() - 1]);
    return region;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("log_log_slope: need matching series with >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(std::max(std::abs(y[i]), 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ComparisonReport compare(const SystemParams& params, const TimeGrid& grid,
                         const WitnessKind& kind, const CompareSettings& settings) {
    kind.check_orders();
    if (!kind.has_closed_form())
        throw ExactOnlyWitness(kind.name() + ": exact-only witness, nothing to compare");
    if (settings.ladder.size() < 4)
        throw std::invalid_argument("compare: convergence ladder needs >= 4 points");

    ComparisonReport report{kind, grid, {}, 0.0, settings.ladder, {}, 0.0};

    const std::array<WitnessKind, 1> kinds{kind};
    const auto exact_grid = exact_values(params, grid, kinds, settings.exact);
    const auto pert_grid = perturbative_values(params, grid, kind, settings.fault);
    report.residuals.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        report.residuals[i] = std::abs(pert_grid[i] - exact_grid[0][i]);
        report.max_abs_residual = std::max(report.max_abs_residual, report.residuals[i]);
    }

    // Ladder points, ascending for the single sequential propagation.
    std::vector<double> ladder = settings.ladder;
    std::sort(ladder.begin(), ladder.end());
    const TimeGrid ladder_grid(std::vector<double>(ladder.begin(), ladder.end()));
    const auto exact_ladder = exact_values(params, ladder_grid, kinds, settings.exact);
    const auto pert_ladder = perturbative_values(params, ladder_grid, kind, settings.fault);
    std::vector<double> res(ladder.size());
    for (std::size_t i = 0; i < ladder.size(); ++i)
        res[i] = std::abs(pert_ladder[i] - exact_ladder[0][i]);
    report.slope = log_log_slope(ladder, res);

    // Report the ladder in the order requested.
    report.ladder_residuals.resize(settings.ladder.size());
    for (std::size_t i = 0; i < settings.ladder.size(); ++i) {
        const auto it = std::find(ladder.begin(), ladder.end(), settings.ladder[i]);
        report.ladder_residuals[i] = res[static_cast<std::size_t>(it - ladder.begin())];
    }
    return report;
}

} // namespace ambec
