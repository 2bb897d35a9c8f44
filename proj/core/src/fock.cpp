#include "ambec/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace ambec {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string format_time(double t) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", t);
    return buf;
}

} // namespace

FockSpace::FockSpace(int cutoff_a, int cutoff_b) : na_max_(cutoff_a), nb_max_(cutoff_b) {
    if (cutoff_a < 1 || cutoff_b < 1)
        throw std::invalid_argument("FockSpace: cutoffs must be >= 1");
}

FockSpace FockSpace::build(const SystemParams& params, const CutoffPolicy& policy) {
    const double na_mean = std::norm(params.alpha);
    const double nb_ceiling = std::norm(params.beta) + 0.5 * na_mean;
    if (policy.kind == CutoffPolicy::Kind::Manual) {
        if (policy.cutoff_a < na_mean)
            throw CutoffError("cutoff_a below the mean atomic occupation");
        if (policy.cutoff_b < nb_ceiling)
            throw CutoffError("cutoff_b below the reachable mean molecular occupation");
        return FockSpace(policy.cutoff_a, policy.cutoff_b);
    }
    const int ca = static_cast<int>(std::ceil(na_mean + 8.0 * std::sqrt(na_mean + 1.0)));
    const int cb = static_cast<int>(std::ceil(nb_ceiling + 8.0 * std::sqrt(nb_ceiling + 1.0)));
    return FockSpace(std::max(ca, 1), std::max(cb, 1));
}

double StateVector::norm() const {
    double s = 0.0;
    for (const Complex& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

StateVector coherent_state(const FockSpace& space, Complex alpha, Complex beta) {
    const int na_max = space.cutoff_a();
    const int nb_max = space.cutoff_b();
    const double aa = std::norm(alpha);
    const double bb = std::norm(beta);
    const double log_abs_a = aa > 0.0 ? std::log(std::abs(alpha)) : 0.0;
    const double log_abs_b = bb > 0.0 ? std::log(std::abs(beta)) : 0.0;
    const double arg_a = std::arg(alpha);
    const double arg_b = std::arg(beta);
    const int na_top = aa > 0.0 ? na_max : 0;
    const int nb_top = bb > 0.0 ? nb_max : 0;

    StateVector state;
    state.amplitudes.assign(space.dimension(), Complex{0.0, 0.0});
    state.time = 0.0;
    state.cutoff_a = na_max;
    state.cutoff_b = nb_max;

    double captured = 0.0;
    for (int na = 0; na <= na_top; ++na) {
        const double la = -0.5 * (aa + bb) + na * log_abs_a - 0.5 * std::lgamma(na + 1.0);
        for (int nb = 0; nb <= nb_top; ++nb) {
            const double lm = la + nb * log_abs_b - 0.5 * std::lgamma(nb + 1.0);
            const Complex amp = std::polar(std::exp(lm), na * arg_a + nb * arg_b);
            state.amplitudes[space.index(na, nb)] = amp;
            captured += std::norm(amp);
        }
    }

    const double tail = std::max(0.0, 1.0 - captured);
    if (tail > 1e-10)
        throw CutoffError("cutoff too small: truncated coherent state drops probability " +
                          std::to_string(tail));

    const double inv = 1.0 / std::sqrt(captured);
    for (Complex& a : state.amplitudes) a *= inv;
    return state;
}

double top_shell_population(const StateVector& state) {
    double mass = 0.0;
    for (int na = 0; na <= state.cutoff_a; ++na)
        for (int nb = 0; nb <= state.cutoff_b; ++nb)
            if (na >= state.cutoff_a - 2 || nb >= state.cutoff_b - 2)
                mass += std::norm(state.amplitudes[state.index(na, nb)]);
    return mass;
}

Hamiltonian::Hamiltonian(const FockSpace& space, double omega, double delta)
    : space_(space), omega_(omega), delta_(delta) {
    const int na_max = space.cutoff_a();
    const int nb_max = space.cutoff_b();
    const int charge_max = na_max + 2 * nb_max;
    blocks_.reserve(charge_max + 1);
    for (int charge = 0; charge <= charge_max; ++charge) {
        Block block;
        block.charge = charge;
        int nb_lo = std::max(0, (charge - na_max + 1) / 2);
        int nb_hi = std::min(charge / 2, nb_max);
        if (nb_lo > nb_hi) continue;
        block.nb_min = nb_lo;
        for (int nb = nb_lo; nb <= nb_hi; ++nb) {
            const int na = charge - 2 * nb;
            block.basis.push_back(space.index(na, nb));
            block.diag.push_back(0.5 * delta * na);
        }
        for (int nb = nb_lo; nb < nb_hi; ++nb) {
            const int na = charge - 2 * nb; // coupled to (na - 2, nb + 1)
            block.coupling.push_back(
                0.5 * omega *
                std::sqrt(static_cast<double>(na) * (na - 1.0) * (nb + 1.0)));
        }
        blocks_.push_back(std::move(block));
    }
}

void Hamiltonian::apply(std::span<const Complex> in, std::span<Complex> out) const {
    std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
    for (const Block& block : blocks_) {
        const std::size_t w = block.basis.size();
        for (std::size_t j = 0; j < w; ++j) {
            Complex acc = block.diag[j] * in[block.basis[j]];
            if (j > 0) acc += block.coupling[j - 1] * in[block.basis[j - 1]];
            if (j + 1 < w) acc += block.coupling[j] * in[block.basis[j + 1]];
            out[block.basis[j]] = acc;
        }
    }
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

using Vec = std::vector<Complex>;

double l2(const Vec& v) {
    double s = 0.0;
    for (const Complex& x : v) s += std::norm(x);
    return std::sqrt(s);
}

// Adaptive embedded stepper over [0, span] with error budgeted per unit time
// (local error <= tolerance * h / span * scale), so `tolerance` acts as a
// global error target for the whole interval. Rhs must fill dz with
// -i H(tau) z.
template <typename Rhs>
void integrate_adaptive(Vec& z, double span, double tolerance, double scale, int subdivision,
                        double norm_guard, double t0_report, const Rhs& rhs) {
    if (span <= 0.0) return;
    const std::size_t n = z.size();
    Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), work(n), z5(n), err(n);
    const double norm0 = l2(z);
    const double h_min = span * 1e-14;

    rhs(0.0, z, k1);
    double k1_norm = l2(k1);
    double h = std::min(span, k1_norm > 0.0 ? 0.01 * std::max(norm0, 1e-30) / k1_norm : span);
    bool k1_fresh = true;
    double tau = 0.0;

    auto stage = [&](const Vec& base, double htau, Vec& out, double hstage,
                     std::initializer_list<std::pair<const Vec*, double>> terms) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex acc = base[i];
            for (const auto& [kv, w] : terms) acc += hstage * w * (*kv)[i];
            work[i] = acc;
        }
        rhs(htau, work, out);
    };

    auto attempt = [&](double hstep, const Vec& from, double from_tau, Vec& result) {
        stage(from, from_tau + c2 * hstep, k2, hstep, {{&k1, a21}});
        stage(from, from_tau + c3 * hstep, k3, hstep, {{&k1, a31}, {&k2, a32}});
        stage(from, from_tau + c4 * hstep, k4, hstep, {{&k1, a41}, {&k2, a42}, {&k3, a43}});
        stage(from, from_tau + c5 * hstep, k5, hstep,
              {{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}});
        stage(from, from_tau + hstep, k6, hstep,
              {{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}});
        for (std::size_t i = 0; i < n; ++i)
            result[i] = from[i] + hstep * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                           b6 * k6[i]);
        rhs(from_tau + hstep, result, k7);
        for (std::size_t i = 0; i < n; ++i)
            err[i] = hstep * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
        return l2(err);
    };

    while (true) {
        const double remaining = span - tau;
        if (remaining <= h_min) break; // sub-resolution residual: done
        if (h < h_min)
            throw PropagationError("step size underflow at t=" +
                                   format_time(t0_report + tau));
        h = std::min(h, remaining);
        if (!k1_fresh) {
            rhs(tau, z, k1);
            k1_fresh = true;
        }
        const double err_norm = attempt(h, z, tau, z5);
        const double bound = tolerance * (h / span) * std::max(scale, 1e-30);
        if (err_norm <= bound) {
            if (subdivision > 1) {
                // Re-walk the accepted step in equal substeps (self-convergence
                // check); the controller's h is unchanged.
                const double hs = h / subdivision;
                Vec cur = z;
                double sub_tau = tau;
                for (int s = 0; s < subdivision; ++s) {
                    rhs(sub_tau, cur, k1);
                    attempt(hs, cur, sub_tau, z5);
                    cur = z5;
                    sub_tau += hs;
                }
                z = cur;
                k1_fresh = false;
            } else {
                z = z5;
                std::swap(k1, k7); // FSAL
                k1_fresh = true;
            }
            tau += h;
            const double grow = err_norm > 0.0 ? 0.9 * std::pow(bound / err_norm, 0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
            const double drift = std::abs(l2(z) - norm0);
            if (drift > std::max(norm_guard * std::max(norm0, 1e-30), 1e-13 * norm0))
                throw PropagationError("norm drift " + std::to_string(drift) + " at t=" +
                                       format_time(t0_report + tau));
        } else {
            const double shrink = 0.9 * std::pow(bound / err_norm, 0.2);
            h *= std::clamp(shrink, 0.1, 0.9);
            k1_fresh = true; // k1 still matches (tau, z)
        }
    }
}

} // namespace

StateVector propagate(const StateVector& state, const Hamiltonian& hamiltonian, double t_target,
                      const PropagationSettings& settings) {
    if (t_target < state.time)
        throw std::invalid_argument("propagate: t_target must be >= state.time");
    if (state.dimension() != hamiltonian.space().dimension())
        throw std::invalid_argument("propagate: state/space dimension mismatch");
    if (!(settings.tolerance >= 0.0))
        throw std::invalid_argument("propagate: tolerance must be >= 0");

    StateVector out = state;
    const double span = t_target - state.time;
    if (span == 0.0) return out;

    const double delta = hamiltonian.delta();

    if (settings.use_blocks) {
        for (const Hamiltonian::Block& block : hamiltonian.blocks()) {
            const std::size_t w = block.basis.size();
            Vec z(w);
            for (std::size_t j = 0; j < w; ++j) z[j] = state.amplitudes[block.basis[j]];
            const double scale = l2(z);
            // Blocks holding no measurable amplitude stay frozen; their whole
            // contribution is below double resolution.
            if (scale <= 1e-30) continue;

            if (w == 1) {
                // Single-entry block: pure phase.
                out.amplitudes[block.basis[0]] =
                    z[0] * std::polar(1.0, -block.diag[0] * span);
                continue;
            }

            // Integrate in the frame that strips the detuning diagonal: the
            // remaining coupling carries phase factors exp(-/+ i delta tau).
            auto rhs = [&](double tau, const Vec& in, Vec& dz) {
                const Complex up = std::polar(1.0, delta * tau);  // exp(+i delta tau)
                const Complex dn = std::conj(up);
                for (std::size_t j = 0; j < w; ++j) {
                    Complex acc{0.0, 0.0};
                    if (j > 0) acc += block.coupling[j - 1] * dn * in[j - 1];
                    if (j + 1 < w) acc += block.coupling[j] * up * in[j + 1];
                    dz[j] = -kI * acc;
                }
            };
            integrate_adaptive(z, span, settings.tolerance, scale, settings.step_subdivision,
                               settings.norm_guard, state.time, rhs);
            for (std::size_t j = 0; j < w; ++j)
                out.amplitudes[block.basis[j]] =
                    z[j] * std::polar(1.0, -block.diag[j] * span);
        }
    } else {
        Vec z(state.amplitudes.begin(), state.amplitudes.end());
        Vec hz(z.size());
        auto rhs = [&](double, const Vec& in, Vec& dz) {
            hamiltonian.apply(in, hz);
            for (std::size_t i = 0; i < dz.size(); ++i) dz[i] = -kI * hz[i];
        };
        integrate_adaptive(z, span, settings.tolerance, 1.0, settings.step_subdivision,
                           settings.norm_guard, state.time, rhs);
        std::copy(z.begin(), z.end(), out.amplitudes.begin());
    }

    out.time = t_target;

    const double drift = std::abs(out.norm() - state.norm());
    if (drift > settings.norm_guard)
        throw PropagationError("norm drift " + std::to_string(drift) +
                               " exceeds guard at t=" + format_time(t_target));
    const double tail = top_shell_population(out);
    if (tail > settings.tail_bound)
        throw CutoffError("cutoff exhausted at t=" + format_time(t_target) +
                          ": top-shell population " + std::to_string(tail));
    return out;
}

Complex moment(const StateVector& state, int p, int q, int r, int s) {
    if (p < 0 || q < 0 || r < 0 || s < 0)
        throw std::invalid_argument("moment: orders must be >= 0");
    if (p > state.cutoff_a || q > state.cutoff_a || r > state.cutoff_b || s > state.cutoff_b)
        throw CutoffError("moment: operator order exceeds cutoff headroom");

    Complex acc{0.0, 0.0};
    const int na_hi = std::min(state.cutoff_a, state.cutoff_a + q - p);
    const int nb_hi = std::min(state.cutoff_b, state.cutoff_b + s - r);
    for (int na = q; na <= na_hi; ++na) {
        double fa = 1.0;
        for (int j = 0; j < q; ++j) fa *= static_cast<double>(na - j);
        for (int j = 1; j <= p; ++j) fa *= static_cast<double>(na - q + j);
        const double wa = std::sqrt(fa);
        for (int nb = s; nb <= nb_hi; ++nb) {
            double fb = 1.0;
            for (int j = 0; j < s; ++j) fb *= static_cast<double>(nb - j);
            for (int j = 1; j <= r; ++j) fb *= static_cast<double>(nb - s + j);
            acc += std::conj(state.amplitudes[state.index(na - q + p, nb - s + r)]) *
                   state.amplitudes[state.index(na, nb)] * (wa * std::sqrt(fb));
        }
    }
    return acc;
}

double factorial_moment(const StateVector& state, int i, bool mode_a) {
    if (i == 0) return 1.0;
    return mode_a ? moment(state, i, i, 0, 0).real() : moment(state, 0, 0, i, i).real();
}

namespace {

struct QuadMoments {
    double na, nb;
    Complex ma1, mb1, ma2, mb2, mab, mabd;
};

QuadMoments quad_moments(const StateVector& st) {
    QuadMoments m;
    m.na = moment(st, 1, 1, 0, 0).real();
    m.nb = moment(st, 0, 0, 1, 1).real();
    m.ma1 = moment(st, 0, 1, 0, 0);
    m.mb1 = moment(st, 0, 0, 0, 1);
    m.ma2 = moment(st, 0, 2, 0, 0);
    m.mb2 = moment(st, 0, 0, 0, 2);
    m.mab = moment(st, 0, 1, 0, 1);
    m.mabd = moment(st, 0, 1, 1, 0);
    return m;
}

double var_xab(const QuadMoments& m) {
    const double sq = 0.125 * (2.0 * m.ma2.real() + 2.0 * m.na + 1.0 + 2.0 * m.mb2.real() +
                               2.0 * m.nb + 1.0 + 4.0 * m.mab.real() + 4.0 * m.mabd.real());
    const double mean = (m.ma1.real() + m.mb1.real()) / std::sqrt(2.0);
    return sq - mean * mean;
}

double var_yab(const QuadMoments& m) {
    const double sq = 0.125 * (-2.0 * m.ma2.real() + 2.0 * m.na + 1.0 - 2.0 * m.mb2.real() +
                               2.0 * m.nb + 1.0 - 4.0 * m.mab.real() + 4.0 * m.mabd.real());
    const double mean = (m.ma1.imag() + m.mb1.imag()) / std::sqrt(2.0);
    return sq - mean * mean;
}

double ipow(double x, int k) {
    double r = 1.0;
    while (k-- > 0) r *= x;
    return r;
}

} // namespace

WitnessValue witness_exact(const StateVector& state, const SystemParams& params,
                           const WitnessKind& kind) {
    kind.check_orders();
    double value = 0.0;
    switch (kind.tag) {
    case WitnessTag::VarXa: {
        const double n = moment(state, 1, 1, 0, 0).real();
        const Complex m1 = moment(state, 0, 1, 0, 0), m2 = moment(state, 0, 2, 0, 0);
        value = 0.25 * (1.0 + 2.0 * n + 2.0 * m2.real()) - m1.real() * m1.real();
        break;
    }
    case WitnessTag::VarYa: {
        const double n = moment(state, 1, 1, 0, 0).real();
        const Complex m1 = moment(state, 0, 1, 0, 0), m2 = moment(state, 0, 2, 0, 0);
        value = 0.25 * (1.0 + 2.0 * n - 2.0 * m2.real()) - m1.imag() * m1.imag();
        break;
    }
    case WitnessTag::VarXb: {
        const double n = moment(state, 0, 0, 1, 1).real();
        const Complex m1 = moment(state, 0, 0, 0, 1), m2 = moment(state, 0, 0, 0, 2);
        value = 0.25 * (1.0 + 2.0 * n + 2.0 * m2.real()) - m1.real() * m1.real();
        break;
    }
    case WitnessTag::VarYb: {
        const double n = moment(state, 0, 0, 1, 1).real();
        const Complex m1 = moment(state, 0, 0, 0, 1), m2 = moment(state, 0, 0, 0, 2);
        value = 0.25 * (1.0 + 2.0 * n - 2.0 * m2.real()) - m1.imag() * m1.imag();
        break;
    }
    case WitnessTag::VarXab:
        value = var_xab(quad_moments(state));
        break;
    case WitnessTag::VarYab:
        value = var_yab(quad_moments(state));
        break;
    case WitnessTag::AmpSq1a: {
        const Complex m2 = moment(state, 0, 2, 0, 0), m4 = moment(state, 0, 4, 0, 0);
        const double n22 = moment(state, 2, 2, 0, 0).real();
        value = 0.5 * m4.real() + 0.5 * n22 - m2.real() * m2.real();
        break;
    }
    case WitnessTag::AmpSq2a: {
        const Complex m2 = moment(state, 0, 2, 0, 0), m4 = moment(state, 0, 4, 0, 0);
        const double n22 = moment(state, 2, 2, 0, 0).real();
        value = -0.5 * m4.real() + 0.5 * n22 - m2.imag() * m2.imag();
        break;
    }
    case WitnessTag::AmpSq1b: {
        const Complex m2 = moment(state, 0, 0, 0, 2), m4 = moment(state, 0, 0, 0, 4);
        const double n22 = moment(state, 0, 0, 2, 2).real();
        value = 0.5 * m4.real() + 0.5 * n22 - m2.real() * m2.real();
        break;
    }
    case WitnessTag::AmpSq2b: {
        const Complex m2 = moment(state, 0, 0, 0, 2), m4 = moment(state, 0, 0, 0, 4);
        const double n22 = moment(state, 0, 0, 2, 2).real();
        value = -0.5 * m4.real() + 0.5 * n22 - m2.imag() * m2.imag();
        break;
    }
    case WitnessTag::Da: {
        const double n = moment(state, 1, 1, 0, 0).real();
        value = moment(state, 2, 2, 0, 0).real() - n * n;
        break;
    }
    case WitnessTag::Db: {
        const double n = moment(state, 0, 0, 1, 1).real();
        value = moment(state, 0, 0, 2, 2).real() - n * n;
        break;
    }
    case WitnessTag::Dab: {
        const double na = moment(state, 1, 1, 0, 0).real();
        const double nb = moment(state, 0, 0, 1, 1).real();
        value = moment(state, 1, 1, 1, 1).real() - na * nb;
        break;
    }
    case WitnessTag::HOAa:
        value = moment(state, kind.n, kind.n, 0, 0).real() -
                ipow(moment(state, 1, 1, 0, 0).real(), kind.n);
        break;
    case WitnessTag::HOAb:
        value = moment(state, 0, 0, kind.n, kind.n).real() -
                ipow(moment(state, 0, 0, 1, 1).real(), kind.n);
        break;
    case WitnessTag::LeeRa:
    case WitnessTag::LeeRb: {
        const bool mode_a = kind.tag == WitnessTag::LeeRa;
        const int l = kind.n, m = kind.m;
        const double num = factorial_moment(state, l + 1, mode_a) *
                           factorial_moment(state, m - 1, mode_a);
        const double den = factorial_moment(state, l, mode_a) *
                           factorial_moment(state, m, mode_a);
        if (std::abs(den) < 1e-300)
            throw NumericalError(kind.name() + ": vanishing factorial moments");
        value = num / den - 1.0;
        break;
    }
    case WitnessTag::HZ1:
        value = moment(state, 1, 1, 1, 1).real() - std::norm(moment(state, 0, 1, 1, 0));
        break;
    case WitnessTag::HZ2:
        value = moment(state, 1, 1, 0, 0).real() * moment(state, 0, 0, 1, 1).real() -
                std::norm(moment(state, 0, 1, 0, 1));
        break;
    case WitnessTag::Duan: {
        const QuadMoments m = quad_moments(state);
        value = 4.0 * (var_xab(m) + var_yab(m)) - 2.0;
        break;
    }
    case WitnessTag::HZ1Higher:
        value = moment(state, kind.n, kind.n, kind.m, kind.m).real() -
                std::norm(moment(state, 0, kind.n, kind.m, 0));
        break;
    case WitnessTag::HZ2Higher:
        value = moment(state, kind.n, kind.n, 0, 0).real() *
                    moment(state, 0, 0, kind.m, kind.m).real() -
                std::norm(moment(state, 0, kind.n, 0, kind.m));
        break;
    }
    return WitnessValue{kind, params.omega * state.time, value, Backend::Exact};
}

void save_state(std::ostream& os, const StateVector& state, const SystemParams& params) {
    char buf[128];
    os << "ambec-state v1\n";
    std::snprintf(buf, sizeof(buf), "omega %.17g\ndelta %.17g\n", params.omega, params.delta);
    os << buf;
    std::snprintf(buf, sizeof(buf), "alpha %.17g %.17g\nbeta %.17g %.17g\n",
                  params.alpha.real(), params.alpha.imag(), params.beta.real(),
                  params.beta.imag());
    os << buf;
    os << "cutoff_a " << state.cutoff_a << "\ncutoff_b " << state.cutoff_b << "\n";
    std::snprintf(buf, sizeof(buf), "time %.17g\n", state.time);
    os << buf;
    os << "amplitudes " << state.dimension() << "\n";
    for (const Complex& a : state.amplitudes) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", a.real(), a.imag());
        os << buf;
    }
}

namespace {

std::string expect_token(std::istream& is, const char* what) {
    std::string tok;
    if (!(is >> tok)) throw std::runtime_error(std::string("state snapshot: missing ") + what);
    return tok;
}

double expect_double(std::istream& is, const char* what) {
    double v = 0.0;
    if (!(is >> v)) throw std::runtime_error(std::string("state snapshot: bad value for ") + what);
    return v;
}

void expect_keyword(std::istream& is, const char* kw) {
    if (expect_token(is, kw) != kw)
        throw std::runtime_error(std::string("state snapshot: expected '") + kw + "'");
}

} // namespace

StateVector load_state(std::istream& is, SystemParams* params_out) {
    expect_keyword(is, "ambec-state");
    const std::string version = expect_token(is, "version");
    if (version != "v1")
        throw std::runtime_error("state snapshot: unsupported version " + version);
    expect_keyword(is, "omega");
    const double omega = expect_double(is, "omega");
    expect_keyword(is, "delta");
    const double delta = expect_double(is, "delta");
    expect_keyword(is, "alpha");
    const double ar = expect_double(is, "alpha.re"), ai = expect_double(is, "alpha.im");
    expect_keyword(is, "beta");
    const double br = expect_double(is, "beta.re"), bi = expect_double(is, "beta.im");
    expect_keyword(is, "cutoff_a");
    const int ca = static_cast<int>(expect_double(is, "cutoff_a"));
    expect_keyword(is, "cutoff_b");
    const int cb = static_cast<int>(expect_double(is, "cutoff_b"));
    expect_keyword(is, "time");
    const double time = expect_double(is, "time");
    expect_keyword(is, "amplitudes");
    const int dim = static_cast<int>(expect_double(is, "amplitude count"));
    if (dim != (ca + 1) * (cb + 1))
        throw std::runtime_error("state snapshot: amplitude count does not match cutoffs");

    StateVector state;
    state.cutoff_a = ca;
    state.cutoff_b = cb;
    state.time = time;
    state.amplitudes.resize(dim);
    for (int i = 0; i < dim; ++i) {
        const double re = expect_double(is, "amplitude.re");
        const double im = expect_double(is, "amplitude.im");
        state.amplitudes[i] = Complex{re, im};
    }
    if (params_out) *params_out = SystemParams(omega, delta, {ar, ai}, {br, bi});
    return state;
}

} // namespace ambec
