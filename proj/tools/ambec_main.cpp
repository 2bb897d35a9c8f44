#include "ambec/report.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int finish(const ambec::RunResult& result) {
    for (const std::string& msg : result.messages)
        (result.exit_code == 0 ? std::cout : std::cerr) << msg << "\n";
    if (!result.report_text.empty()) std::cout << result.report_text;
    for (const std::string& path : result.files_written)
        std::cout << "wrote " << path << "\n";
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-mode atom-molecule condensate nonclassicality sweeps"};
    app.require_subcommand(1);

    std::string config_path;
    std::string backend_name;
    std::string out_dir;
    int cutoff_a = -1, cutoff_b = -1;
    double tolerance = -1.0;
    bool force = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "experiment config file")->required();
        cmd->add_option("--backend", backend_name, "perturbative | exact | both");
        cmd->add_flag("--force", force, "proceed despite validation warnings");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--cutoff-a", cutoff_a, "manual atomic cutoff");
        cmd->add_option("--cutoff-b", cutoff_b, "manual molecular cutoff");
        cmd->add_option("--tolerance", tolerance, "propagation error target");
    };

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate witnesses over a time grid");
    add_common(sweep_cmd);
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "cross-validate the two backends");
    add_common(compare_cmd);
    app.add_subcommand("presets", "list shipped parameter presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 1 : 0;
    }

    if (app.got_subcommand("presets")) {
        std::cout << ambec::preset_listing();
        return 0;
    }

    ambec::CliOverrides overrides;
    if (!backend_name.empty()) {
        auto b = ambec::backend_from_string(backend_name);
        if (!b) {
            std::cerr << "unknown backend '" << backend_name << "'\n";
            return 1;
        }
        overrides.backend = *b;
    }
    overrides.force = force;
    if (!out_dir.empty()) overrides.out_dir = out_dir;
    if (cutoff_a >= 0) overrides.cutoff_a = cutoff_a;
    if (cutoff_b >= 0) overrides.cutoff_b = cutoff_b;
    if (tolerance >= 0.0) overrides.tolerance = tolerance;

    ambec::ExperimentConfig config;
    try {
        config = ambec::ExperimentConfig::load(config_path);
    } catch (const ambec::ConfigError& e) {
        std::cerr << config_path << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    ambec::apply_overrides(config, overrides);

    if (app.got_subcommand("sweep")) return finish(ambec::run_sweep(config));
    return finish(ambec::run_compare(config));
}
