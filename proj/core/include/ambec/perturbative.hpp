#pragma once

#include "ambec/model.hpp"

#include <optional>

namespace ambec {

// The sixteen complex evolution coefficients of the third-order operator
// solution, evaluated at physical time t. The internal relations
// (f3 = -f4/2, f5 = -f6/2 = f7/3, g2 = f1*f2/2, g3 = g4/2 = f1*conj(f3),
// g5 = -g7/4 = g8/2 = f1*f5/2, g6 = f1*conj(f8)) hold by construction.
struct CoefficientSet {
    Complex f1, f2, f3, f4, f5, f6, f7, f8;
    Complex g1, g2, g3, g4, g5, g6, g7, g8;
    double time = 0.0;

    Complex f(int i) const; // 1-based accessors, handy for tests and fault hooks
    Complex g(int i) const;
};

// Closed-form coefficients at physical time t >= 0. Throws on t < 0.
CoefficientSet coefficients(const SystemParams& params, double t);

// Test hook: scales one named coefficient ("f1".."f8", "g1".."g8") by
// (1 + relative_scale). Used to prove that the cross-backend comparison
// actually detects a corrupted closed form.
struct CoefficientFault {
    std::string name;
    double relative_scale = 0.0;
};

CoefficientSet apply_fault(CoefficientSet set, const CoefficientFault& fault);

enum class Mode { A, B, AB };
enum class QuadratureAxis { X, Y };
enum class PairCriterion { HZ1, HZ2, Duan };
enum class HigherPairCriterion { HZ1Higher, HZ2Higher };

// Closed-form witness evaluations on a precomputed coefficient set. These are
// the printed third-order expressions evaluated verbatim; alpha and beta may
// be complex.
double variance_quadrature_from(const CoefficientSet& c, Complex alpha, Complex beta,
                                Mode mode, QuadratureAxis axis);
double amplitude_squared_from(const CoefficientSet& c, Complex alpha, Complex beta,
                              Mode mode, int index);
double antibunching_D_from(const CoefficientSet& c, Complex alpha, Complex beta, Mode mode);
double hoa_from(const CoefficientSet& c, Complex alpha, Complex beta, Mode mode, int n);
double entanglement_from(const CoefficientSet& c, Complex alpha, Complex beta, PairCriterion which);
double entanglement_higher_from(const CoefficientSet& c, Complex alpha, Complex beta,
                                HigherPairCriterion which, int n, int m);

// Convenience wrappers evaluating the coefficients at physical time t.
WitnessValue variance_quadrature(const SystemParams& params, double t, Mode mode,
                                 QuadratureAxis axis);
WitnessValue amplitude_squared(const SystemParams& params, double t, Mode mode, int index);
WitnessValue antibunching_D(const SystemParams& params, double t, Mode mode);
WitnessValue hoa(const SystemParams& params, double t, Mode mode, int n);
WitnessValue entanglement(const SystemParams& params, double t, PairCriterion which);
WitnessValue entanglement_higher(const SystemParams& params, double t, HigherPairCriterion which,
                                 int n, int m);

// Dispatch by WitnessKind. Throws ExactOnlyWitness for kinds without a
// printed closed form (Lee R, HZ1Higher outside (1,2)).
double evaluate_perturbative(const CoefficientSet& c, Complex alpha, Complex beta,
                             const WitnessKind& kind);
WitnessValue evaluate_perturbative(const SystemParams& params, double t, const WitnessKind& kind);

} // namespace ambec
