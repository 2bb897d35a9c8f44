#include "ambec/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ambec {

void apply_overrides(ExperimentConfig& config, const CliOverrides& overrides) {
    if (overrides.backend) config.backend = *overrides.backend;
    if (overrides.force) config.force = true;
    if (overrides.out_dir) config.output_directory = *overrides.out_dir;
    if (overrides.cutoff_a || overrides.cutoff_b) {
        config.cutoffs.kind = CutoffPolicy::Kind::Manual;
        if (overrides.cutoff_a) config.cutoffs.cutoff_a = *overrides.cutoff_a;
        if (overrides.cutoff_b) config.cutoffs.cutoff_b = *overrides.cutoff_b;
    }
    if (overrides.tolerance) config.tolerance = *overrides.tolerance;
}

std::string render_sweep_csv(const SystemParams& params, const TimeGrid& grid,
                             std::span<const WitnessKind> kinds,
                             std::span<const WitnessSeries> series) {
    // Index series by (kind position, backend).
    auto find_series = [&](const WitnessKind& kind, Backend backend) -> const WitnessSeries* {
        for (const WitnessSeries& s : series)
            if (s.kind == kind && s.backend == backend) return &s;
        return nullptr;
    };

    std::ostringstream os;
    os << "omega_t,t,witness,order_n,order_m,backend,value\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double omega_t = grid[i];
        const double t = params.rescale(omega_t);
        for (const WitnessKind& kind : kinds) {
            for (Backend backend : {Backend::Perturbative, Backend::Exact}) {
                const WitnessSeries* s = find_series(kind, backend);
                if (!s) continue;
                os << format_double(omega_t) << ',' << format_double(t) << ','
                   << kind.base_name() << ',' << kind.n << ',' << kind.m << ','
                   << to_string(backend) << ',' << format_double(s->values[i]) << '\n';
            }
        }
    }
    return os.str();
}

namespace {

// Validation gate shared by both commands. Fills result and returns false
// when the run must not proceed.
bool gate(const ExperimentConfig& config, RunResult& result) {
    ValidationReport report;
    try {
        report = validate(config.omega, config.delta, config.alpha, config.beta,
                          config.grid().samples(), config.backend);
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.messages.push_back(std::string("invalid experiment: ") + e.what());
        return false;
    }
    for (const std::string& msg : report.errors())
        result.messages.push_back("error: " + msg);
    if (report.hard_error()) {
        result.exit_code = 1;
        return false;
    }
    for (const std::string& msg : report.warnings())
        result.messages.push_back("warning: " + msg);
    if (!report.ok() && !config.force) {
        result.messages.push_back("validation warnings present; re-run with --force to proceed");
        result.exit_code = 1;
        return false;
    }
    return true;
}

std::filesystem::path output_path(const ExperimentConfig& config, const std::string& suffix) {
    std::filesystem::path dir(config.output_directory);
    if (!dir.empty()) std::filesystem::create_directories(dir);
    return dir / (config.output_basename + suffix);
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
    os << contents;
}

} // namespace

RunResult run_sweep(const ExperimentConfig& config) {
    RunResult result;
    if (config.kinds.empty()) {
        result.exit_code = 1;
        result.messages.push_back("no witnesses selected: set [witnesses] kinds or a preset");
        return result;
    }
    if (!gate(config, result)) return result;

    try {
        const SystemParams params = config.params();
        const TimeGrid grid = config.grid();
        const auto series = sweep(params, grid, config.kinds, config.backend,
                                  config.exact_settings());
        const std::string csv = render_sweep_csv(params, grid, config.kinds, series);
        const auto path = output_path(config, ".csv");
        write_file(path, csv);
        result.files_written.push_back(path.string());
    } catch (const NumericalError& e) {
        result.exit_code = 2;
        result.messages.push_back(std::string("numerical failure: ") + e.what());
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.messages.push_back(e.what());
    }
    return result;
}

RunResult run_compare(const ExperimentConfig& config) {
    RunResult result;
    if (config.kinds.empty()) {
        result.exit_code = 1;
        result.messages.push_back("no witnesses selected: set [witnesses] kinds or a preset");
        return result;
    }
    if (!gate(config, result)) return result;

    // A comparison needs nonzero times and a usable ladder.
    std::vector<double> ladder = config.ladder;
    std::sort(ladder.begin(), ladder.end());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
    if (ladder.size() < 4 || ladder.front() <= 0.0) {
        result.exit_code = 1;
        result.messages.push_back(
            "degenerate ladder: the convergence fit needs >= 4 distinct omega_t > 0 points");
        return result;
    }
    if (config.grid_max <= 0.0) {
        result.exit_code = 1;
        result.messages.push_back(
            "degenerate grid: comparison needs omega_t > 0 samples (grid max is 0)");
        return result;
    }

    CompareSettings settings;
    settings.ladder = config.ladder;
    settings.exact = config.exact_settings();
    if (!config.fault_coefficient.empty() && config.fault_scale != 0.0)
        settings.fault = CoefficientFault{config.fault_coefficient, config.fault_scale};

    std::ostringstream text;
    std::ostringstream csv;
    csv << "witness,order_n,order_m,omega_t,residual\n";
    bool any_failed = false;
    bool any_compared = false;

    try {
        const SystemParams params = config.params();
        const TimeGrid grid = config.grid();
        for (const WitnessKind& kind : config.kinds) {
            if (!kind.has_closed_form()) {
                result.messages.push_back("warning: " + kind.name() +
                                          " is exact-only; skipped in comparison");
                continue;
            }
            const ComparisonReport report = compare(params, grid, kind, settings);
            any_compared = true;

            bool ok = report.slope >= config.min_slope;
            if (config.max_residual > 0.0 && report.max_abs_residual > config.max_residual)
                ok = false;
            any_failed = any_failed || !ok;

            char line[256];
            std::snprintf(line, sizeof(line), "%-16s slope=%7.3f  max|residual|=%.6e  %s\n",
                          kind.name().c_str(), report.slope, report.max_abs_residual,
                          ok ? "ok" : "FAIL");
            text << line;
            for (std::size_t i = 0; i < report.grid.size(); ++i)
                csv << kind.base_name() << ',' << kind.n << ',' << kind.m << ','
                    << format_double(report.grid[i]) << ','
                    << format_double(report.residuals[i]) << '\n';
        }
    } catch (const NumericalError& e) {
        result.exit_code = 2;
        result.messages.push_back(std::string("numerical failure: ") + e.what());
        return result;
    } catch (const std::exception& e) {
        result.exit_code = 1;
        result.messages.push_back(e.what());
        return result;
    }

    if (!any_compared) {
        result.exit_code = 1;
        result.messages.push_back("no dual-backend witnesses to compare");
        return result;
    }

    result.report_text = text.str();
    const auto path = output_path(config, "_compare.csv");
    write_file(path, csv.str());
    result.files_written.push_back(path.string());
    if (any_failed) {
        result.exit_code = 2;
        result.messages.push_back("comparison failed for at least one witness");
    }
    return result;
}

std::string preset_listing() {
    std::ostringstream os;
    os << "name    omega    delta    alpha  beta   witnesses\n";
    for (const Preset& p : presets()) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-7s %-8.6g %-8.6g %-6s %-6s %s\n", p.name.c_str(),
                      p.omega, p.delta, format_complex(p.alpha).c_str(),
                      format_complex(p.beta).c_str(), p.note.c_str());
        os << line;
    }
    return os.str();
}

} // namespace ambec
