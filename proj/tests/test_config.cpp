#include "ambec/config.hpp"

#include "ambec/report.hpp"

#include <doctest.h>

#include <fstream>

using namespace ambec;

TEST_CASE("complex literals") {
    CHECK(parse_complex("5") == Complex{5, 0});
    CHECK(parse_complex("-2") == Complex{-2, 0});
    CHECK(parse_complex("1.5+2i") == Complex{1.5, 2});
    CHECK(parse_complex("2-0.5i") == Complex{2, -0.5});
    CHECK(parse_complex("1e2+3.5e-1i") == Complex{100, 0.35});
    CHECK(parse_complex("-3i") == Complex{0, -3});
    CHECK(parse_complex("i") == Complex{0, 1});
    CHECK(!parse_complex("").has_value());
    CHECK(!parse_complex("2+").has_value());
    CHECK(!parse_complex("x").has_value());

    for (Complex z : {Complex{0, 0}, Complex{-2, 0}, Complex{1.25, -3.5}, Complex{0, 2}})
        CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("config parses, serializes and round-trips") {
    const std::string text = R"(# demo experiment
[experiment]
omega = 100
delta = 1e4
alpha = 5
beta = -2

[grid]
max = 0.4
samples = 50
include_zero = true

[witnesses]
kinds = VarXa, HOAa(3), LeeR(2,1,a), HZ2Higher(1,2)

[run]
backend = both
force = true

[exact]
cutoff_policy = manual
cutoff_a = 40
cutoff_b = 30
tolerance = 1e-11

[output]
directory = out
basename = demo
)";
    const ExperimentConfig cfg = ExperimentConfig::parse(text);
    CHECK(cfg.omega == 100.0);
    CHECK(cfg.delta == 1e4);
    CHECK(cfg.alpha == Complex{5, 0});
    CHECK(cfg.beta == Complex{-2, 0});
    CHECK(cfg.grid_max == 0.4);
    CHECK(cfg.grid_samples == 50);
    CHECK(cfg.include_zero);
    REQUIRE(cfg.kinds.size() == 4);
    CHECK(cfg.kinds[2] == WitnessKind::lee_a(2, 1));
    CHECK(cfg.backend == Backend::Both);
    CHECK(cfg.force);
    CHECK(cfg.cutoffs.kind == CutoffPolicy::Kind::Manual);
    CHECK(cfg.cutoffs.cutoff_a == 40);
    CHECK(cfg.tolerance == 1e-11);
    CHECK(cfg.output_directory == "out");

    // Lossless round-trip through the canonical text form.
    const ExperimentConfig again = ExperimentConfig::parse(cfg.to_text());
    CHECK(again == cfg);
}

TEST_CASE("presets seed a config and explicit keys override") {
    const ExperimentConfig cfg = ExperimentConfig::parse(
        "[experiment]\npreset = fig1\nbeta = -2\n");
    CHECK(cfg.preset == "fig1");
    CHECK(cfg.alpha == Complex{5, 0});
    CHECK(cfg.beta == Complex{-2, 0}); // explicit key wins
    CHECK(cfg.grid_samples == 200);
    CHECK(cfg.kinds.size() == 6);
    CHECK(ExperimentConfig::parse(cfg.to_text()) == cfg);

    // Key order does not matter: a preset key later in the file must not
    // clobber explicit values.
    const ExperimentConfig reordered = ExperimentConfig::parse(
        "[experiment]\nbeta = -2\npreset = fig1\n");
    CHECK(reordered.beta == Complex{-2, 0});
}

TEST_CASE("unknown sections and keys are rejected with line numbers") {
    try {
        ExperimentConfig::parse("[experiment]\nomega = 100\nbogus = 3\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("unknown key 'bogus'") != std::string::npos);
    }
    CHECK_THROWS_AS(ExperimentConfig::parse("[nope]\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("omega = 1\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[experiment]\npreset = nope\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[witnesses]\nkinds = Bogus\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[witnesses]\nkinds = HOAa(1)\n"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse("[run]\nbackend = fast\n"), ConfigError);
}

TEST_CASE("sweep CSV schema, ordering and byte stability") {
    ExperimentConfig cfg;
    cfg.alpha = {2, 0};
    cfg.beta = {1, 0};
    cfg.grid_max = 0.1;
    cfg.grid_samples = 3;
    cfg.kinds = {WitnessKind::simple(WitnessTag::VarXa), WitnessKind::hoa_a(3)};
    cfg.backend = Backend::Both;

    const SystemParams params = cfg.params();
    const TimeGrid grid = cfg.grid();
    const auto series = sweep(params, grid, cfg.kinds, cfg.backend, cfg.exact_settings());
    const std::string csv = render_sweep_csv(params, grid, cfg.kinds, series);

    // Header plus grid-major rows: 3 points x 2 kinds x 2 backends.
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto nl = csv.find('\n', pos);
        lines.push_back(csv.substr(pos, nl - pos));
        pos = nl + 1;
    }
    REQUIRE(lines.size() == 1 + 3 * 2 * 2);
    CHECK(lines[0] == "omega_t,t,witness,order_n,order_m,backend,value");
    CHECK(lines[1].find("VarXa,0,0,perturbative,") != std::string::npos);
    CHECK(lines[2].find("VarXa,0,0,exact,") != std::string::npos);
    CHECK(lines[3].find("HOAa,3,0,perturbative,") != std::string::npos);
    CHECK(lines[1].substr(0, lines[1].find(',')) ==
          format_double(grid[0])); // grid-major ordering

    // Byte-identical on a repeated run.
    const auto series2 = sweep(params, grid, cfg.kinds, cfg.backend, cfg.exact_settings());
    CHECK(render_sweep_csv(params, grid, cfg.kinds, series2) == csv);

    // The 17-significant-digit rendering reparses to the exact double.
    const std::string tail = lines[1].substr(lines[1].rfind(',') + 1);
    CHECK(std::stod(tail) == series[0].values[0]);
}

TEST_CASE("run_sweep writes a CSV for a baseline grid") {
    ExperimentConfig cfg;
    cfg.alpha = {2, 0};
    cfg.beta = {1, 0};
    cfg.grid_max = 0.0; // single point at t = 0
    cfg.kinds = {WitnessKind::simple(WitnessTag::VarXa), WitnessKind::simple(WitnessTag::Da)};
    cfg.backend = Backend::Both;
    cfg.output_directory = "run_sweep_test_out";
    cfg.output_basename = "baseline";

    const RunResult result = run_sweep(cfg);
    REQUIRE(result.exit_code == 0);
    REQUIRE(result.files_written.size() == 1);

    std::ifstream in(result.files_written[0]);
    REQUIRE(in.good());
    std::string header, row;
    std::getline(in, header);
    bool saw_var = false, saw_da = false;
    while (std::getline(in, row)) {
        if (row.find("VarXa") != std::string::npos) {
            saw_var = true;
            CHECK(std::abs(std::stod(row.substr(row.rfind(',') + 1)) - 0.25) < 1e-9);
        }
        if (row.find("Da") != std::string::npos) {
            saw_da = true;
            CHECK(std::abs(std::stod(row.substr(row.rfind(',') + 1))) < 1e-9);
        }
        CHECK(row.substr(0, 2) == "0,");
    }
    CHECK(saw_var);
    CHECK(saw_da);
}

TEST_CASE("run_compare flags corrupted coefficients and degenerate setups") {
    ExperimentConfig cfg;
    cfg.alpha = {2, 0};
    cfg.beta = {1, 0};
    cfg.grid_max = 0.2;
    cfg.grid_samples = 4;
    cfg.kinds = {WitnessKind::simple(WitnessTag::VarXa), WitnessKind::lee_a(2, 1)};
    cfg.backend = Backend::Both;
    cfg.output_directory = "run_compare_test_out";

    SUBCASE("clean run passes and reports the skipped exact-only kind") {
        const RunResult result = run_compare(cfg);
        CHECK(result.exit_code == 0);
        CHECK(result.report_text.find("VarXa") != std::string::npos);
        CHECK(result.report_text.find("ok") != std::string::npos);
        bool warned = false;
        for (const auto& m : result.messages)
            warned = warned || m.find("exact-only") != std::string::npos;
        CHECK(warned);
    }
    SUBCASE("fault injection fails with the numerical exit code") {
        cfg.fault_coefficient = "f3";
        cfg.fault_scale = 1e-3;
        const RunResult result = run_compare(cfg);
        CHECK(result.exit_code == 2);
    }
    SUBCASE("a t = 0 only grid is rejected up front") {
        cfg.grid_max = 0.0;
        const RunResult result = run_compare(cfg);
        CHECK(result.exit_code == 1);
        bool mentioned = false;
        for (const auto& m : result.messages)
            mentioned = mentioned || m.find("degenerate grid") != std::string::npos;
        CHECK(mentioned);
    }
    SUBCASE("a degenerate ladder is rejected up front") {
        cfg.ladder = {0.1, 0.1, 0.1, 0.1};
        const RunResult result = run_compare(cfg);
        CHECK(result.exit_code == 1);
    }
}

TEST_CASE("preset listing includes the documented parameter sets") {
    const std::string listing = preset_listing();
    CHECK(listing.find("fig1") != std::string::npos);
    CHECK(listing.find("fig1d") != std::string::npos);
    CHECK(listing.find("fig3d") != std::string::npos);
}
