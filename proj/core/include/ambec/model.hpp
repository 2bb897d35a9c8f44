#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ambec {

using Complex = std::complex<double>;

// Thrown when a computation fails numerically (cutoff exhausted, step-size
// underflow, convergence failure). Maps to CLI exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PropagationError : NumericalError {
    using NumericalError::NumericalError;
};

struct CutoffError : NumericalError {
    using NumericalError::NumericalError;
};

// Requested a closed-form evaluation for a witness that only the exact
// backend can serve (Lee R, general-order HZ1Higher).
struct ExactOnlyWitness : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Backend { Perturbative, Exact, Both };

std::string_view to_string(Backend b);
std::optional<Backend> backend_from_string(std::string_view s);

// Physical parameter set of one experiment: coupling rate omega, detuning
// delta (both in inverse-time units, hbar = 1) and the initial coherent
// amplitudes of the atomic (alpha) and molecular (beta) modes.
struct SystemParams {
    double omega;
    double delta;
    Complex alpha;
    Complex beta;

    // Rejects omega <= 0, delta == 0 and non-finite amplitudes.
    SystemParams(double omega_, double delta_, Complex alpha_, Complex beta_);

    // Rescaled interaction time omega*t -> physical time t.
    double rescale(double omega_t) const { return omega_t / omega; }
};

// Strictly increasing sequence of rescaled times omega*t >= 0.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> samples);

    // n samples uniformly spread over (0, max]; optionally prepends 0.
    // max == 0 yields the single-point grid {0}.
    static TimeGrid uniform(double max_omega_t, int samples, bool include_zero = false);

    std::span<const double> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    double operator[](std::size_t i) const { return samples_[i]; }
    double max() const { return samples_.back(); }

    bool operator==(const TimeGrid&) const = default;

private:
    std::vector<double> samples_;
};

struct Violation {
    enum class Severity { Warning, Error };
    Severity severity;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> items;

    bool ok() const { return items.empty(); }
    bool hard_error() const;
    std::vector<std::string> warnings() const;
    std::vector<std::string> errors() const;
};

// Checks a candidate experiment without constructing anything. Hard errors:
// omega <= 0, delta == 0, non-finite amplitudes, non-increasing or negative
// grid. Warnings: perturbative backend with max omega*t >= 1 (outside the
// stated validity of the third-order solution), exact backend with |alpha| > 5
// (heavy run at desk scale).
ValidationReport validate(double omega, double delta, Complex alpha, Complex beta,
                          std::span<const double> grid_omega_t, Backend backend);

ValidationReport validate(const SystemParams& params, const TimeGrid& grid, Backend backend);

enum class WitnessTag {
    VarXa, VarYa, VarXb, VarYb, VarXab, VarYab,
    AmpSq1a, AmpSq2a, AmpSq1b, AmpSq2b,
    Da, Db, Dab,
    HOAa, HOAb,          // order n >= 2
    LeeRa, LeeRb,        // orders (l, m), 1 <= m <= l
    HZ1, HZ2, Duan,
    HZ1Higher, HZ2Higher // orders (n, m), n >= 1, m >= 1
};

// A witness identity plus its order parameters where applicable. For HOA the
// order is n; for Lee R the orders are (l, m) stored as (n, m); for the
// higher-order entanglement criteria the orders are (n, m).
struct WitnessKind {
    WitnessTag tag;
    int n = 0;
    int m = 0;

    bool operator==(const WitnessKind&) const = default;

    // Canonical text form, e.g. "VarXa", "HOAa(3)", "LeeR(2,1,a)",
    // "HZ2Higher(1,2)".
    std::string name() const;

    // Tag name without order parameters (CSV witness column).
    std::string base_name() const;

    // Nonclassicality threshold: 1/4 for quadrature variances, 0 otherwise.
    double threshold() const;

    bool sign_based() const { return threshold() == 0.0; }

    // True when the witness has a printed closed form the perturbative
    // backend can evaluate. False for Lee R (any orders) and HZ1Higher with
    // (n, m) != (1, 2).
    bool has_closed_form() const;

    // Throws std::invalid_argument when the order parameters violate the
    // witness's constraints.
    void check_orders() const;

    static std::optional<WitnessKind> parse(std::string_view text);

    static WitnessKind simple(WitnessTag tag) { return WitnessKind{tag, 0, 0}; }
    static WitnessKind hoa_a(int n) { return WitnessKind{WitnessTag::HOAa, n, 0}; }
    static WitnessKind hoa_b(int n) { return WitnessKind{WitnessTag::HOAb, n, 0}; }
    static WitnessKind lee_a(int l, int m) { return WitnessKind{WitnessTag::LeeRa, l, m}; }
    static WitnessKind lee_b(int l, int m) { return WitnessKind{WitnessTag::LeeRb, l, m}; }
    static WitnessKind hz1_higher(int n, int m) { return WitnessKind{WitnessTag::HZ1Higher, n, m}; }
    static WitnessKind hz2_higher(int n, int m) { return WitnessKind{WitnessTag::HZ2Higher, n, m}; }
};

struct WitnessValue {
    WitnessKind kind;
    double omega_t;
    double value;
    Backend backend;
};

// Named parameter presets shipped with the tool, each with a default witness
// selection and grid.
struct Preset {
    std::string name;
    double omega;
    double delta;
    Complex alpha;
    Complex beta;
    std::string note;
    std::vector<WitnessKind> default_kinds;
    double grid_max;
    int grid_samples;

    SystemParams params() const { return SystemParams(omega, delta, alpha, beta); }
};

std::span<const Preset> presets();
const Preset* find_preset(std::string_view name);

} // namespace ambec
