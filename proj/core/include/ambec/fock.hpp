#pragma once

#include "ambec/model.hpp"

#include <iosfwd>
#include <vector>

namespace ambec {

struct CutoffPolicy {
    enum class Kind { Auto, Manual };
    Kind kind = Kind::Auto;
    int cutoff_a = 0;
    int cutoff_b = 0;

    static CutoffPolicy automatic() { return {}; }
    static CutoffPolicy manual(int cutoff_a, int cutoff_b) {
        return {Kind::Manual, cutoff_a, cutoff_b};
    }

    bool operator==(const CutoffPolicy&) const = default;
};

// Truncated two-mode Fock basis |n_a, n_b> with n_a <= cutoff_a,
// n_b <= cutoff_b. Basis ordering: index = n_a * (cutoff_b + 1) + n_b.
class FockSpace {
public:
    FockSpace(int cutoff_a, int cutoff_b);

    // Auto policy sizes the space from the initial amplitudes:
    //   cutoff_a = ceil(|alpha|^2 + 8 sqrt(|alpha|^2 + 1))
    //   cutoff_b = ceil(|beta|^2 + |alpha|^2/2 + 8 sqrt(|beta|^2 + |alpha|^2/2 + 1))
    // The molecular headroom includes |alpha|^2/2 because charge conservation
    // caps molecular growth at half the mean atom number. Manual cutoffs below
    // the mean occupations are rejected.
    static FockSpace build(const SystemParams& params, const CutoffPolicy& policy);

    int cutoff_a() const { return na_max_; }
    int cutoff_b() const { return nb_max_; }
    int dimension() const { return (na_max_ + 1) * (nb_max_ + 1); }
    int index(int na, int nb) const { return na * (nb_max_ + 1) + nb; }

private:
    int na_max_;
    int nb_max_;
};

// Normalized state over the truncated basis at physical time `time`.
struct StateVector {
    std::vector<Complex> amplitudes;
    double time = 0.0;
    int cutoff_a = 0;
    int cutoff_b = 0;

    int dimension() const { return static_cast<int>(amplitudes.size()); }
    int index(int na, int nb) const { return na * (cutoff_b + 1) + nb; }
    double norm() const;
};

// Product coherent state |alpha> x |beta> truncated to the space, then
// renormalized once. Throws CutoffError when the truncated tail mass
// exceeds 1e-10.
StateVector coherent_state(const FockSpace& space, Complex alpha, Complex beta);

// Total probability carried by the top shells (n_a >= cutoff_a - 2 or
// n_b >= cutoff_b - 2); the truncation-error monitor.
double top_shell_population(const StateVector& state);

// Matrix form of H = (delta/2) a^dag a + (omega/2)(a^dag a^dag b + a a b^dag)
// on the truncated space. The coupling only connects |n_a, n_b> with
// |n_a - 2, n_b + 1>, so H is block diagonal over the conserved charge
// K = n_a + 2 n_b and tridiagonal inside each block (entries ordered by n_b).
class Hamiltonian {
public:
    struct Block {
        int charge = 0;
        int nb_min = 0;
        std::vector<int> basis;        // flat indices, n_b ascending
        std::vector<double> diag;      // (delta/2) * n_a
        std::vector<double> coupling;  // <j+1|H|j>, size basis.size()-1
    };

    Hamiltonian(const FockSpace& space, double omega, double delta);

    const FockSpace& space() const { return space_; }
    double omega() const { return omega_; }
    double delta() const { return delta_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    // Full-space matvec: out = H in. Used by the full-matrix propagation path
    // and by tests that pin the block decomposition against the dense action.
    void apply(std::span<const Complex> in, std::span<Complex> out) const;

private:
    FockSpace space_;
    double omega_;
    double delta_;
    std::vector<Block> blocks_;
};

struct PropagationSettings {
    // Target global L2 error for one propagate() call; the adaptive stepper
    // budgets local error proportionally to step size.
    double tolerance = 1e-10;
    // Ceiling for the top-shell population at arrival.
    double tail_bound = 1e-8;
    // Norm drift ceiling; exceeding it aborts (no renormalization is applied,
    // drift is an error signal).
    double norm_guard = 1e-9;
    // Every accepted step is split into this many equal substeps. Used by the
    // halved-step self-convergence check.
    int step_subdivision = 1;
    // false selects the full-matrix reference path (tests only; slow).
    bool use_blocks = true;
};

// Evolves the state under i d/dt |psi> = H |psi> from state.time to t_target
// with an embedded Dormand-Prince 5(4) stepper. The block path integrates each
// charge block in the frame that removes the detuning diagonal, which keeps
// step sizes tied to the coupling strength rather than the detuning.
StateVector propagate(const StateVector& state, const Hamiltonian& hamiltonian, double t_target,
                      const PropagationSettings& settings = {});

// <psi| (a^dag)^p a^q (b^dag)^r b^s |psi>. Throws CutoffError when an order
// exceeds the cutoffs (the result would be truncation-dominated).
Complex moment(const StateVector& state, int p, int q, int r, int s);

// <N^(i)> = <(a^dag)^i a^i> for mode a (or b): the i-th factorial moment.
double factorial_moment(const StateVector& state, int i, bool mode_a);

// Witness evaluated directly from moments of the defining operators,
// independent of any closed form. Supports all orders, including general
// (n, m) HZ1Higher and Lee R(l, m).
WitnessValue witness_exact(const StateVector& state, const SystemParams& params,
                           const WitnessKind& kind);

// Portable text snapshot of a state (versioned header with parameters,
// cutoffs and time; amplitudes in basis order). Round-trips exactly.
void save_state(std::ostream& os, const StateVector& state, const SystemParams& params);
StateVector load_state(std::istream& is, SystemParams* params_out = nullptr);

} // namespace ambec
