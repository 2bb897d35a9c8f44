#pragma once

#include "ambec/config.hpp"

#include <string>
#include <vector>

namespace ambec {

// Command-level results; exit_code follows the CLI contract
// (0 success, 1 usage/config, 2 numerical failure).
struct RunResult {
    int exit_code = 0;
    std::vector<std::string> messages;      // human-readable notes and warnings
    std::vector<std::string> files_written; // paths of emitted artifacts
    std::string report_text;                // compare: the formatted report
};

// CLI-level overrides applied on top of a loaded config.
struct CliOverrides {
    std::optional<Backend> backend;
    bool force = false;
    std::optional<std::string> out_dir;
    std::optional<int> cutoff_a;
    std::optional<int> cutoff_b;
    std::optional<double> tolerance;
};

void apply_overrides(ExperimentConfig& config, const CliOverrides& overrides);

// Renders the sweep CSV: header omega_t,t,witness,order_n,order_m,backend,value;
// rows grid-major, then kind in config order, then backend (perturbative before
// exact); values in a fixed 17-significant-digit decimal rendering; LF endings.
std::string render_sweep_csv(const SystemParams& params, const TimeGrid& grid,
                             std::span<const WitnessKind> kinds,
                             std::span<const WitnessSeries> series);

// Runs validation + sweep and writes <basename>.csv under the output
// directory.
RunResult run_sweep(const ExperimentConfig& config);

// Runs the cross-backend comparison for every closed-form kind in the config;
// writes <basename>_compare.csv and returns the text report. Exact-only kinds
// are listed and skipped with a warning.
RunResult run_compare(const ExperimentConfig& config);

// Table of shipped presets.
std::string preset_listing();

} // namespace ambec
