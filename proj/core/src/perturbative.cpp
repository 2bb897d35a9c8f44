#include "ambec/perturbative.hpp"

#include <cmath>

namespace ambec {

namespace {

constexpr Complex kI{0.0, 1.0};

// X + c.c.; the imaginary parts cancel exactly.
Complex hs(Complex x) { return x + std::conj(x); }

// Every printed witness expression is Hermitian-symmetric, so its evaluated
// imaginary residue must vanish to roundoff. Enforced on every evaluation.
double real_checked(Complex value) {
    if (std::abs(value.imag()) > 1e-12)
        throw NumericalError("witness expression has non-vanishing imaginary residue");
    return value.real();
}

double ipow(double x, int k) {
    if (k < 0) return 1.0 / ipow(x, -k);
    double r = 1.0;
    while (k-- > 0) r *= x;
    return r;
}

Complex cpow(Complex x, int k) {
    Complex r{1.0, 0.0};
    while (k-- > 0) r *= x;
    return r;
}

// Binomial coefficient with the usual extension: 0 when k > n or k < 0.
double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
    return r;
}

} // namespace

Complex CoefficientSet::f(int i) const {
    switch (i) {
    case 1: return f1; case 2: return f2; case 3: return f3; case 4: return f4;
    case 5: return f5; case 6: return f6; case 7: return f7; case 8: return f8;
    }
    throw std::out_of_range("CoefficientSet::f index");
}

Complex CoefficientSet::g(int i) const {
    switch (i) {
    case 1: return g1; case 2: return g2; case 3: return g3; case 4: return g4;
    case 5: return g5; case 6: return g6; case 7: return g7; case 8: return g8;
    }
    throw std::out_of_range("CoefficientSet::g index");
}

CoefficientSet coefficients(const SystemParams& params, double t) {
    if (t < 0.0) throw std::invalid_argument("coefficients: t must be >= 0");
    const double omega = params.omega;
    const double delta = params.delta;
    const double r = omega / delta;
    const double half = 0.5 * delta * t;

    CoefficientSet c;
    c.time = t;
    c.f1 = std::exp(-kI * half);
    c.f2 = -2.0 * kI * r * std::sin(half);
    c.f3 = kI * r * r * (std::sin(half) - half * c.f1);
    c.f4 = -2.0 * c.f3;
    c.f5 = -kI * r * r * r * (delta * t * std::cos(half) - 2.0 * std::sin(half));
    c.f6 = -2.0 * c.f5;
    c.f7 = 3.0 * c.f5;
    c.f8 = -kI * r * r * r * c.f1 * (delta * t - std::sin(delta * t));
    c.g1 = 1.0;
    c.g2 = 0.5 * c.f1 * c.f2;
    c.g3 = c.f1 * std::conj(c.f3);
    c.g4 = 2.0 * c.g3;
    c.g5 = 0.5 * c.f1 * c.f5;
    c.g6 = c.f1 * std::conj(c.f8);
    c.g7 = -4.0 * c.g5;
    c.g8 = 2.0 * c.g5;
    return c;
}

CoefficientSet apply_fault(CoefficientSet set, const CoefficientFault& fault) {
    const double s = 1.0 + fault.relative_scale;
    Complex* slot = nullptr;
    if (fault.name.size() == 2 && (fault.name[0] == 'f' || fault.name[0] == 'g')) {
        int i = fault.name[1] - '0';
        if (i >= 1 && i <= 8) {
            Complex* f[] = {&set.f1, &set.f2, &set.f3, &set.f4, &set.f5, &set.f6, &set.f7, &set.f8};
            Complex* g[] = {&set.g1, &set.g2, &set.g3, &set.g4, &set.g5, &set.g6, &set.g7, &set.g8};
            slot = fault.name[0] == 'f' ? f[i - 1] : g[i - 1];
        }
    }
    if (!slot) throw std::invalid_argument("apply_fault: unknown coefficient '" + fault.name + "'");
    *slot *= s;
    return set;
}

double variance_quadrature_from(const CoefficientSet& c, Complex alpha, Complex beta,
                                Mode mode, QuadratureAxis axis) {
    const double sign = axis == QuadratureAxis::X ? 1.0 : -1.0;
    const Complex a2 = alpha * alpha;
    const double aa = std::norm(alpha);
    const double bb = std::norm(beta);
    const Complex cb = std::conj(beta);
    const Complex ca = std::conj(alpha);

    switch (mode) {
    case Mode::A: {
        Complex common = 1.0 + 2.0 * std::norm(c.f2) * bb
                       + hs(2.0 * std::conj(c.f2) * c.f3 * a2 * cb);
        Complex pm = hs(c.f1 * c.f3 * a2 + (c.f1 * c.f2 + c.f1 * c.f5) * beta
                        + 6.0 * c.f1 * c.f5 * aa * beta
                        + (c.f1 * c.f6 + c.f2 * c.f4) * bb * beta);
        return real_checked(0.25 * (common + sign * pm));
    }
    case Mode::B: {
        Complex pm = hs((c.g7 + 2.0 * c.g2 * c.g4) * a2 * beta);
        return real_checked(0.25 * (1.0 + sign * pm));
    }
    case Mode::AB: {
        Complex common = 1.0 + std::norm(c.f2) * bb
                       + hs(std::conj(c.f2) * c.f3 * a2 * cb
                            + c.f2 * std::conj(c.g4) * bb * ca);
        Complex pm = 0.5 * hs(c.f1 * c.f3 * a2 + (c.f1 * c.f2 + c.f1 * c.f5) * beta
                              + 2.0 * c.f1 * c.g4 * alpha * beta
                              + 4.0 * c.f1 * c.g5 * alpha * alpha * alpha
                              + (c.f1 * c.f6 + c.f2 * c.f4) * bb * beta
                              + (c.g7 + 2.0 * c.g2 * c.g4) * a2 * beta
                              - 4.0 * c.f8 * ca * beta * beta
                              + 6.0 * c.f1 * c.f5 * aa * beta);
        return real_checked(0.25 * (common + sign * pm));
    }
    }
    throw std::logic_error("unreachable");
}

double amplitude_squared_from(const CoefficientSet& c, Complex alpha, Complex beta,
                              Mode mode, int index) {
    if (index != 1 && index != 2)
        throw std::invalid_argument("amplitude_squared: index must be 1 or 2");
    if (mode == Mode::AB)
        throw std::invalid_argument("amplitude_squared: defined for pure modes only");
    const double sign = index == 1 ? 1.0 : -1.0;
    const Complex a2 = alpha * alpha;
    const double aa = std::norm(alpha);
    const double bb = std::norm(beta);
    const Complex cb = std::conj(beta);
    const Complex ca = std::conj(alpha);

    if (mode == Mode::B) {
        Complex pm = hs((c.g7 + 2.0 * c.g2 * c.g4) * a2 * beta * beta * beta);
        return real_checked(sign * pm);
    }

    Complex base = 2.0 * std::norm(c.f2) * aa * bb
                 + hs(2.0 * (c.f1 * std::conj(c.f5) + std::conj(c.f1) * c.f8) * aa * a2 * cb
                      + 2.0 * c.f1 * std::conj(c.f2) * std::norm(c.f2) * a2 * cb * bb
                      - std::conj(c.f2) * c.f3 * a2 * cb);
    Complex pm = hs(c.f1 * c.f1 * c.f1 * c.f3 * a2 * a2
                    + c.f1 * cpow(c.f2, 3) * ca * ca * cpow(beta, 3)
                    + 0.5 * c.f1 * c.f1 * c.f2 * c.f2 * (1.0 + 4.0 * aa) * beta * beta
                    + c.f1 * c.f1 * (c.f1 * c.f2 + 7.0 * c.f1 * c.f5 + c.f2 * c.f3) * a2 * beta
                    + 2.0 * c.f1 * c.f1 * (2.0 * c.f2 * c.f3 + 3.0 * c.f1 * c.f5) * aa * a2 * beta
                    + c.f1 * c.f1 * (3.0 * c.f2 * c.f4 - 2.0 * c.f1 * c.f5) * a2 * bb * beta);
    return real_checked(base + sign * pm);
}

double antibunching_D_from(const CoefficientSet& c, Complex alpha, Complex beta, Mode mode) {
    const Complex a2 = alpha * alpha;
    const double aa = std::norm(alpha);
    const double bb = std::norm(beta);
    const Complex cb = std::conj(beta);

    switch (mode) {
    case Mode::A: {
        Complex value = std::norm(c.f2) * (bb + 6.0 * aa * bb - 0.5 * aa * aa)
            + hs((std::conj(c.f2) * c.f1 + std::conj(c.f5) * c.f1 + std::conj(c.f2) * c.f3) * a2 * cb
                 + (std::conj(c.f6) * c.f1 + std::conj(c.f2) * c.f4
                    + 4.0 * std::norm(c.f2) * std::conj(c.f2) * c.f1) * bb * a2 * cb
                 + 6.0 * (std::conj(c.f5) * c.f1 + std::conj(c.f2) * c.f3) * aa * a2 * cb);
        return real_checked(value);
    }
    case Mode::B:
        return real_checked(hs(2.0 * c.f1 * c.f1 * c.g6 * bb * a2 * cb));
    case Mode::AB: {
        Complex value = -std::norm(c.f2) * aa * bb
            - hs(2.0 * c.f1 * c.f1 * c.g6 * bb * a2 * cb
                 + (std::conj(c.f5) * c.f1 + std::conj(c.f2) * c.f3) * aa * a2 * cb);
        return real_checked(value);
    }
    }
    throw std::logic_error("unreachable");
}

double hoa_from(const CoefficientSet& c, Complex alpha, Complex beta, Mode mode, int n) {
    if (n < 2) throw std::invalid_argument("hoa: order n must be >= 2");
    if (mode == Mode::AB) throw std::invalid_argument("hoa: defined for pure modes only");
    const double aa = std::norm(alpha);
    const double bb = std::norm(beta);
    const Complex cb = std::conj(beta);
    const double dn = static_cast<double>(n);

    if (mode == Mode::B) {
        Complex value = hs(dn * (dn - 1.0) * c.f1 * c.f1 * c.g6 * ipow(bb, n - 1)
                           * alpha * alpha * cb);
        return real_checked(value);
    }

    const Complex cf1 = std::conj(c.f1);
    const Complex cf2 = std::conj(c.f2);
    const Complex cf3 = std::conj(c.f3);
    const Complex f112f2f3 = cf1 * cf1 * c.f2 * c.f3; // conj(f1)^2 f2 f3
    const Complex f1f5 = cf1 * c.f5;
    const Complex f3f2 = cf3 * c.f2;
    const Complex n2f1f2 = std::norm(c.f2) * cf1 * c.f2; // |f2|^2 conj(f1) f2
    const double C2 = binom(n, 2), C3 = binom(n, 3), C4 = binom(n, 4);
    const double C5 = binom(n, 5), C6 = binom(n, 6);
    const Complex pair1 = std::conj(alpha) * std::conj(alpha) * beta; // conj(alpha)^2 beta

    double head = std::norm(c.f2)
        * (C2 * C2 * ipow(aa, n - 2) * bb + (dn * dn * dn - dn) * ipow(aa, n - 1) * bb
           - 0.5 * C2 * ipow(aa, n));

    Complex bracket{0.0, 0.0};
    // term = scalar * cf * |alpha|^(2 pa) * |beta|^(2 pb) * (conj(alpha)^2 beta)^pairs;
    // terms whose combinatorial prefactor vanishes are skipped so that the
    // general-n expression stays defined for small n.
    auto add = [&](double scalar, Complex cf, int pa, int pb, int pairs) {
        if (scalar == 0.0) return;
        bracket += scalar * cf * ipow(aa, pa) * ipow(bb, pb) * cpow(pair1, pairs);
    };

    add(dn * dn * dn - 3.0 * dn * dn + 2.0 * dn, f112f2f3, n - 1, 0, 1);
    add(3.0 * (dn * dn - dn), f1f5, n - 1, 0, 1);
    add(dn * dn * dn - dn, f3f2, n - 1, 0, 1);

    add(C2, cf1 * c.f2, n - 2, 0, 1);
    add(0.25 * (ipow(dn, 4) - 6.0 * ipow(dn, 3) + 11.0 * dn * dn - 6.0 * dn), f112f2f3, n - 2, 0, 1);
    add(C2 - 6.0 * C3, f1f5, n - 2, 0, 1);
    add(C2 * C2, f3f2, n - 2, 0, 1);

    add(3.0 * C3, cf1 * cf1 * c.f2 * c.f2, n - 3, 0, 2);
    add(3.0 * C4, cf1 * cf1 * c.f2 * c.f2, n - 4, 0, 2);
    add(6.0 * C4, cf1 * cf1 * cf1 * cpow(c.f2, 3), n - 4, 0, 3);
    add(15.0 * C5, cf1 * cf1 * cf1 * cpow(c.f2, 3), n - 5, 0, 3);
    add(15.0 * C6, cf1 * cf1 * cf1 * cpow(c.f2, 3), n - 6, 0, 3);

    add(C2, cf1 * c.f6, n - 2, 1, 1);
    add(-dn * (dn - 1.0) * (dn - 1.0), f112f2f3, n - 2, 1, 1);
    add(0.5 * C2 * (3.0 * dn * dn - dn - 4.0), n2f1f2, n - 2, 1, 1);
    add(-dn * dn * (dn - 1.0), f3f2, n - 2, 1, 1);

    add(0.75 * C3 * dn * (3.0 * dn - 1.0), n2f1f2, n - 3, 1, 1);
    add(3.0 * C2 * C4, n2f1f2, n - 4, 1, 1);

    return real_checked(head + hs(bracket));
}

double entanglement_from(const CoefficientSet& c, Complex alpha, Complex beta,
                         PairCriterion which) {
    const Complex a2 = alpha * alpha;
    const double aa = std::norm(alpha);
    const double bb = std::norm(beta);
    const Complex cb = std::conj(beta);
    const Complex ca = std::conj(alpha);

    switch (which) {
    case PairCriterion::HZ1: {
        Complex value = std::norm(c.f2) * (bb * bb - aa * bb)
            + hs((3.0 * std::conj(c.f2) * std::conj(c.f3) * c.f1 * c.f1
                  + 4.0 * std::conj(c.f2) * c.f3 - c.g7) * bb * a2 * cb
                 - (std::conj(c.f5) * c.f1 + std::conj(c.f2) * c.f3) * aa * a2 * cb);
        return real_checked(value);
    }
    case PairCriterion::HZ2: {
        Complex value = std::norm(c.f2) * (bb * bb + aa * bb)
            + hs((2.0 * std::conj(c.f5) * c.f1
                  - std::conj(c.f2) * std::conj(c.f3) * c.f1 * c.f1) * bb * a2 * cb
                 - (c.g8 + std::conj(c.g4) * c.g2) * aa * a2 * cb);
        return real_checked(value);
    }
    case PairCriterion::Duan: {
        Complex value = 2.0 * (std::norm(c.f2) * bb
                               + hs(std::conj(c.f2) * c.f3 * a2 * cb
                                    + c.f2 * std::conj(c.g4) * bb * ca));
        return real_checked(value);
    }
    }
    throw std::logic_error("unreachable");
}

double entanglement_higher_from(const CoefficientSet& c, Complex alpha, Complex beta,
                                HigherPairCriterion which, int n, int m) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("entanglement_higher: orders must satisfy n >= 1, m >= 1");
    const Complex a2 = alpha * alpha;
    const double aa = std::norm(alpha);
    const double bb = std::norm(beta);
    const Complex cb = std::conj(beta);

    if (which == HigherPairCriterion::HZ1Higher) {
        if (!(n == 1 && m == 2))
            throw ExactOnlyWitness("HZ1Higher: no closed form derived for orders other than "
                                   "(n,m) = (1,2); use the exact backend");
        Complex value = std::norm(c.f2) * (ipow(bb, 3) - 2.0 * aa * aa * bb)
            + hs((std::conj(c.f2) * c.f3 + 6.0 * std::norm(c.f2) * c.g2 - 2.0 * c.g7)
                     * bb * bb * a2 * cb
                 - (2.0 * std::conj(c.f2) * c.f3 + 2.0 * std::norm(c.f2) * c.g2 + c.g7)
                     * aa * bb * a2 * cb);
        return real_checked(value);
    }

    const double dn = static_cast<double>(n);
    const double dm = static_cast<double>(m);
    const Complex cf1 = std::conj(c.f1);
    const Complex f112f2f3 = cf1 * cf1 * c.f2 * c.f3;
    const Complex f1f5 = cf1 * c.f5;
    const Complex f3f2 = std::conj(c.f3) * c.f2;
    const Complex n2f1f2 = std::norm(c.f2) * cf1 * c.f2;
    const Complex pair1 = std::conj(alpha) * std::conj(alpha) * beta;

    double head = std::norm(c.f2)
        * (dm * dn * ipow(aa, n) * ipow(bb, m) + dn * dn * ipow(aa, n - 1) * ipow(bb, m + 1));

    Complex bracket{0.0, 0.0};
    auto add = [&](double scalar, Complex cf, int pa, int pb) {
        if (scalar == 0.0) return;
        bracket += scalar * cf * ipow(aa, pa) * ipow(bb, pb) * pair1;
    };

    add(dm * dn * (dm - 1.0), f112f2f3, n, m - 1);
    add(dm * dn, f1f5, n, m - 1);
    add(dm * dm * dn, f3f2, n, m - 1);

    add(2.0 * dm * dn, f1f5, n - 1, m);
    add(dn * dn * (1.0 - 2.0 * dm), f3f2, n - 1, m);
    add(-0.5 * dm * dn * dn, n2f1f2, n - 1, m);
    add(-2.0 * dm * dn * dn, f112f2f3, n - 1, m);

    add(-dn * (dn - 1.0) * dm, std::conj(c.f8) * c.f1, n - 2, m);
    add(-dn * (dn - 1.0) * (dn - 2.0) * dm, f3f2, n - 2, m);
    add(-dn * (dn - 1.0) * dm * dn, f112f2f3, n - 2, m);

    add(dn * dn * (dn - 1.0), n2f1f2, n - 2, m + 1);
    add(0.5 * dn * dn * (dn - 1.0) * (dn - 2.0), n2f1f2, n - 3, m + 1);

    return real_checked(head + hs(bracket));
}

namespace {

WitnessValue wrap(const SystemParams& params, double t, const WitnessKind& kind, double value) {
    return WitnessValue{kind, params.omega * t, value, Backend::Perturbative};
}

} // namespace

WitnessValue variance_quadrature(const SystemParams& params, double t, Mode mode,
                                 QuadratureAxis axis) {
    const CoefficientSet c = coefficients(params, t);
    WitnessTag tag;
    if (mode == Mode::A) tag = axis == QuadratureAxis::X ? WitnessTag::VarXa : WitnessTag::VarYa;
    else if (mode == Mode::B) tag = axis == QuadratureAxis::X ? WitnessTag::VarXb : WitnessTag::VarYb;
    else tag = axis == QuadratureAxis::X ? WitnessTag::VarXab : WitnessTag::VarYab;
    return wrap(params, t, WitnessKind::simple(tag),
                variance_quadrature_from(c, params.alpha, params.beta, mode, axis));
}

WitnessValue amplitude_squared(const SystemParams& params, double t, Mode mode, int index) {
    const CoefficientSet c = coefficients(params, t);
    WitnessTag tag;
    if (mode == Mode::A) tag = index == 1 ? WitnessTag::AmpSq1a : WitnessTag::AmpSq2a;
    else tag = index == 1 ? WitnessTag::AmpSq1b : WitnessTag::AmpSq2b;
    return wrap(params, t, WitnessKind::simple(tag),
                amplitude_squared_from(c, params.alpha, params.beta, mode, index));
}

WitnessValue antibunching_D(const SystemParams& params, double t, Mode mode) {
    const CoefficientSet c = coefficients(params, t);
    WitnessTag tag = mode == Mode::A ? WitnessTag::Da
                   : mode == Mode::B ? WitnessTag::Db : WitnessTag::Dab;
    return wrap(params, t, WitnessKind::simple(tag),
                antibunching_D_from(c, params.alpha, params.beta, mode));
}

WitnessValue hoa(const SystemParams& params, double t, Mode mode, int n) {
    const CoefficientSet c = coefficients(params, t);
    WitnessKind kind = mode == Mode::A ? WitnessKind::hoa_a(n) : WitnessKind::hoa_b(n);
    return wrap(params, t, kind, hoa_from(c, params.alpha, params.beta, mode, n));
}

WitnessValue entanglement(const SystemParams& params, double t, PairCriterion which) {
    const CoefficientSet c = coefficients(params, t);
    WitnessTag tag = which == PairCriterion::HZ1 ? WitnessTag::HZ1
                   : which == PairCriterion::HZ2 ? WitnessTag::HZ2 : WitnessTag::Duan;
    return wrap(params, t, WitnessKind::simple(tag),
                entanglement_from(c, params.alpha, params.beta, which));
}

WitnessValue entanglement_higher(const SystemParams& params, double t, HigherPairCriterion which,
                                 int n, int m) {
    const CoefficientSet c = coefficients(params, t);
    WitnessKind kind = which == HigherPairCriterion::HZ1Higher ? WitnessKind::hz1_higher(n, m)
                                                               : WitnessKind::hz2_higher(n, m);
    return wrap(params, t, kind,
                entanglement_higher_from(c, params.alpha, params.beta, which, n, m));
}

double evaluate_perturbative(const CoefficientSet& c, Complex alpha, Complex beta,
                             const WitnessKind& kind) {
    kind.check_orders();
    switch (kind.tag) {
    case WitnessTag::VarXa: return variance_quadrature_from(c, alpha, beta, Mode::A, QuadratureAxis::X);
    case WitnessTag::VarYa: return variance_quadrature_from(c, alpha, beta, Mode::A, QuadratureAxis::Y);
    case WitnessTag::VarXb: return variance_quadrature_from(c, alpha, beta, Mode::B, QuadratureAxis::X);
    case WitnessTag::VarYb: return variance_quadrature_from(c, alpha, beta, Mode::B, QuadratureAxis::Y);
    case WitnessTag::VarXab: return variance_quadrature_from(c, alpha, beta, Mode::AB, QuadratureAxis::X);
    case WitnessTag::VarYab: return variance_quadrature_from(c, alpha, beta, Mode::AB, QuadratureAxis::Y);
    case WitnessTag::AmpSq1a: return amplitude_squared_from(c, alpha, beta, Mode::A, 1);
    case WitnessTag::AmpSq2a: return amplitude_squared_from(c, alpha, beta, Mode::A, 2);
    case WitnessTag::AmpSq1b: return amplitude_squared_from(c, alpha, beta, Mode::B, 1);
    case WitnessTag::AmpSq2b: return amplitude_squared_from(c, alpha, beta, Mode::B, 2);
    case WitnessTag::Da: return antibunching_D_from(c, alpha, beta, Mode::A);
    case WitnessTag::Db: return antibunching_D_from(c, alpha, beta, Mode::B);
    case WitnessTag::Dab: return antibunching_D_from(c, alpha, beta, Mode::AB);
    case WitnessTag::HOAa: return hoa_from(c, alpha, beta, Mode::A, kind.n);
    case WitnessTag::HOAb: return hoa_from(c, alpha, beta, Mode::B, kind.n);
    case WitnessTag::LeeRa:
    case WitnessTag::LeeRb:
        throw ExactOnlyWitness(kind.name() + ": no closed form; exact backend only");
    case WitnessTag::HZ1: return entanglement_from(c, alpha, beta, PairCriterion::HZ1);
    case WitnessTag::HZ2: return entanglement_from(c, alpha, beta, PairCriterion::HZ2);
    case WitnessTag::Duan: return entanglement_from(c, alpha, beta, PairCriterion::Duan);
    case WitnessTag::HZ1Higher:
        return entanglement_higher_from(c, alpha, beta, HigherPairCriterion::HZ1Higher, kind.n, kind.m);
    case WitnessTag::HZ2Higher:
        return entanglement_higher_from(c, alpha, beta, HigherPairCriterion::HZ2Higher, kind.n, kind.m);
    }
    throw std::logic_error("unreachable");
}

WitnessValue evaluate_perturbative(const SystemParams& params, double t, const WitnessKind& kind) {
    const CoefficientSet c = coefficients(params, t);
    return wrap(params, t, kind, evaluate_perturbative(c, params.alpha, params.beta, kind));
}

} // namespace ambec
