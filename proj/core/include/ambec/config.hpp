#pragma once

#include "ambec/engine.hpp"
#include "ambec/model.hpp"

#include <string>
#include <vector>

namespace ambec {

// Config file parse failure with a 1-based line number.
struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_) + ": " + message), line(line_) {}
};

// One experiment described by a flat key=value file with [section] headers.
// Unknown sections or keys are rejected. `to_text()` emits every field
// explicitly so a config round-trips losslessly through the file format.
//
// Grammar (all keys optional; '#' starts a comment):
//
//   [experiment]
//   preset = fig1          # applies a named preset before explicit keys
//   omega = 100            # coupling rate, > 0
//   delta = 10000          # detuning, != 0
//   alpha = 5              # complex literals: 5, -2, 1.5+2i, 2-0.5i
//   beta = 2
//
//   [grid]
//   max = 0.5              # largest rescaled time omega*t (0 = single point t=0)
//   samples = 200          # uniform samples over (0, max]
//   include_zero = false   # prepend omega*t = 0
//
//   [witnesses]
//   kinds = VarXa, HOAa(3), LeeR(2,1,a)
//
//   [run]
//   backend = perturbative # perturbative | exact | both
//   force = false          # proceed despite validation warnings
//
//   [exact]
//   cutoff_policy = auto   # auto | manual
//   cutoff_a = 0
//   cutoff_b = 0
//   tolerance = 1e-10      # propagation error target
//   tail_bound = 1e-8      # top-shell population ceiling
//
//   [compare]
//   ladder = 0.2, 0.1, 0.05, 0.025
//   min_slope = 3
//   max_residual = 0       # 0 disables the absolute residual gate
//   fault_coefficient =    # test hook: f1..f8 / g1..g8
//   fault_scale = 0
//
//   [output]
//   directory = .
//   basename = run
struct ExperimentConfig {
    std::string preset;
    double omega = 100.0;
    double delta = 10000.0;
    Complex alpha{1.0, 0.0};
    Complex beta{1.0, 0.0};

    double grid_max = 0.5;
    int grid_samples = 200;
    bool include_zero = false;

    std::vector<WitnessKind> kinds;

    Backend backend = Backend::Perturbative;
    bool force = false;

    CutoffPolicy cutoffs;
    double tolerance = 1e-10;
    double tail_bound = 1e-8;

    std::vector<double> ladder = {0.2, 0.1, 0.05, 0.025};
    double min_slope = 3.0;
    double max_residual = 0.0;
    std::string fault_coefficient;
    double fault_scale = 0.0;

    std::string output_directory = ".";
    std::string output_basename = "run";

    bool operator==(const ExperimentConfig&) const = default;

    static ExperimentConfig from_preset(const Preset& preset);
    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);
    std::string to_text() const;

    SystemParams params() const { return SystemParams(omega, delta, alpha, beta); }
    TimeGrid grid() const { return TimeGrid::uniform(grid_max, grid_samples, include_zero); }
    ExactSettings exact_settings() const { return {cutoffs, tolerance, tail_bound}; }
};

// Complex literal helpers shared by the config parser and tests.
std::optional<Complex> parse_complex(std::string_view text);
std::string format_complex(Complex value);
std::string format_double(double value); // fixed 17-significant-digit rendering

} // namespace ambec
