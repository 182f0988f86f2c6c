#pragma once

// Cycle integrals C(f; Q) by direct quadrature over the reduction cycle, by
// periods, and along vertical lines for square discriminants.

#include "cyclelift/analytic.hpp"
#include "cyclelift/bqf.hpp"

#include <optional>
#include <string>

namespace cyclelift {

enum class Route { quadrature, periods, lstar, eisenstein_regularized };

std::string to_string(Route route);

struct CycleIntegralResult {
    ComplexValue value;
    Route route = Route::quadrature;
    QuadraticForm Q;
    int k = 0;
};

/// Sum over the reduction cycle of the integrals from z0 to M_j z0 of
/// f(z) Q_{j-1}(z, 1)^{k-1}, on straight segments.
ComplexValue cycle_integral_quadrature_at(const QSeries& f, const QuadraticForm& Q, const Complex& z0,
                                          const EvaluationConfig& cfg);

/// Quadrature from z0 = i, checked against a second base point;
/// ToleranceNotMet if the two disagree.
CycleIntegralResult cycle_integral_quadrature(const QSeries& f, const QuadraticForm& Q, const EvaluationConfig& cfg);

/// sum_n i^{1-n} q^(n) r_n(f) for f with vanishing constant term.
CycleIntegralResult cycle_integral_periods(const QSeries& f, const QuadraticForm& Q, const EvaluationConfig& cfg);

/// The twist (c', d) with -c/s = d/c' in lowest terms for a form
/// equivalent to [0, s, c].
struct SquareTwist {
    long s = 1;
    long c = 1;
    long d = 0;
};
SquareTwist square_twist(const QuadraticForm& Q);

/// i^k s^{k-1} L*(f, zeta_{c'}^d, k) for square discriminant; t0 defaults to 1/c'.
CycleIntegralResult cycle_integral_square(const QSeries& f, const QuadraticForm& Q, const EvaluationConfig& cfg,
                                          std::optional<Rational> t0 = std::nullopt);

/// As above with a constant term allowed (finite-part regularization).
CycleIntegralResult cycle_integral_square_regularized(const QSeries& f, const QuadraticForm& Q,
                                                      const EvaluationConfig& cfg,
                                                      std::optional<Rational> t0 = std::nullopt);

/// C(G_{2k}; Q) for square discriminant.
CycleIntegralResult eisenstein_cycle_square(int k, const QuadraticForm& Q, const EvaluationConfig& cfg,
                                            std::optional<Rational> t0 = std::nullopt);

/// 2 (-1)^k C(G_{2k}; Q).
ComplexValue zeta_Q_neg(int k, const QuadraticForm& Q, const EvaluationConfig& cfg);

/// Chooses the route from the discriminant and the constant term. For
/// non-square discriminant and cuspidal f the period route is evaluated as
/// well and must agree.
CycleIntegralResult cycle_integral(const QSeries& f, const QuadraticForm& Q, const EvaluationConfig& cfg);

/// G_{2k} at the given truncation, shared between callers.
const QSeries& cached_eisenstein_G(int weight, long N);

}  // namespace cyclelift
