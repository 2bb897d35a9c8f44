#pragma once

#include "ambec/fock.hpp"
#include "ambec/model.hpp"
#include "ambec/perturbative.hpp"

#include <optional>
#include <utility>

namespace ambec {

// One witness sampled over a time grid with one backend.
struct WitnessSeries {
    WitnessKind kind;
    TimeGrid grid;
    std::vector<double> values; // aligned to grid
    Backend backend = Backend::Perturbative;
};

// Sub-threshold intervals of a series, endpoints located by linear
// interpolation between adjacent grid samples.
struct NonclassicalRegion {
    WitnessKind kind;
    double threshold = 0.0;
    std::vector<std::pair<double, double>> intervals;

    double total_length() const;
};

// Pointwise |perturbative - exact| residuals over a grid plus a convergence
// slope fitted on a shrinking-time ladder.
struct ComparisonReport {
    WitnessKind kind;
    TimeGrid grid;
    std::vector<double> residuals;
    double max_abs_residual = 0.0;
    std::vector<double> ladder;           // rescaled times, descending
    std::vector<double> ladder_residuals;
    double slope = 0.0;                   // log-log fit over the ladder
};

struct ExactSettings {
    CutoffPolicy cutoffs;
    double tolerance = 1e-10;
    double tail_bound = 1e-8;
};

// Evaluates each kind over the grid. Backend::Both yields, per kind, the
// perturbative series followed by the exact series. The exact backend
// propagates once through the grid and serves every kind from the stored
// moments of the evolved state.
std::vector<WitnessSeries> sweep(const SystemParams& params, const TimeGrid& grid,
                                 std::span<const WitnessKind> kinds, Backend backend,
                                 const ExactSettings& exact = {});

NonclassicalRegion regions(const WitnessSeries& series);

struct CompareSettings {
    std::vector<double> ladder = {0.2, 0.1, 0.05, 0.025};
    ExactSettings exact;
    // Test hook: corrupt one closed-form coefficient before evaluation.
    std::optional<CoefficientFault> fault;
};

// Throws ExactOnlyWitness for kinds without a printed closed form. The ladder
// needs at least four points for the slope fit.
ComparisonReport compare(const SystemParams& params, const TimeGrid& grid,
                         const WitnessKind& kind, const CompareSettings& settings = {});

// Least-squares slope of log|y| against log(x); helper shared with tests.
double log_log_slope(std::span<const double> x, std::span<const double> y);

} // namespace ambec
