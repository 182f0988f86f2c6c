#pragma once

// Numerical evaluation of q-series with tail bounds, incomplete gamma
// functions, regularized periods, period polynomials, Eichler integrals and
// the twisted L*-series.

#include "cyclelift/numeric.hpp"
#include "cyclelift/qseries.hpp"

#include <vector>

namespace cyclelift {

/// |a_n| <= exp(log_A + B sqrt(n)) for n >= 1, fitted from the known
/// coefficients and inflated.
struct GrowthBound {
    double log_A = -1e300;
    double B = 0.0;

    bool vanishes() const { return log_A < -1e299; }
    double log_term(double n) const;
};

GrowthBound fit_growth(const QSeries& f);

/// max_n (ln|a_n| - 2 pi n y) over the known coefficients; -inf for f = 0.
double peak_log_term(const QSeries& f, double y);

/// Natural log of |x|, for exact rationals of any size.
double log_abs(const Rational& x);

/// Numeric copy of a q-series at the precision current at construction.
class NumericSeries {
public:
    explicit NumericSeries(const QSeries& f);

    long valuation() const { return valuation_; }
    long truncation() const { return truncation_; }
    const GrowthBound& growth() const { return growth_; }

    /// Bound for sum_{n > M} |a_n| e^{-2 pi n y}; +inf if it cannot be bounded.
    double tail(long M, double y) const;
    /// Smallest M <= truncation with tail(M, y) <= target, or the truncation.
    long terms_for(double y, double target) const;
    /// Smallest M (beyond the truncation if necessary) meeting the target.
    long terms_required(double y, double target) const;
    /// Natural log of an upper bound for sum |a_n| e^{-2 pi n y}.
    double log_scale(double y) const;
    /// ln(|a_n|) for valuation <= n <= truncation; -inf for zero coefficients.
    double log_coefficient(long n) const { return log_abs_[static_cast<size_t>(n - valuation_)]; }
    const Real& coefficient(long n) const { return coeffs_[static_cast<size_t>(n - valuation_)]; }
    bool is_zero() const { return coeffs_.empty(); }

    /// sum_{valuation <= n <= M} a_n q^n at z with error tail + rounding;
    /// pass a precomputed tail bound to skip recomputing it.
    ComplexValue evaluate(const Complex& z, long M, double tail_bound = -1.0) const;

private:
    long valuation_ = 0;
    long truncation_ = 0;
    std::vector<Real> coeffs_;
    std::vector<double> log_abs_;
    GrowthBound growth_;
};

/// f(z) using the terms n <= N. TruncationExceeded if N exceeds the
/// truncation of f or if the tail at Im z exceeds cfg.tol.
ComplexValue eval_qseries(const QSeries& f, const Complex& z, long N, const EvaluationConfig& cfg);

/// Gamma(s, x) for integer s >= 0. For s >= 1 the entire closed form; for
/// s = 0 the principal branch, the upper side of the cut on the negative
/// axis, in which case *branch_cut is set.
ComplexValue inc_gamma(int s, const Complex& x, bool* branch_cut = nullptr);

/// Gamma(j, x) / x^j for integer j >= 1 and real x != 0.
Real gamma_ratio(int j, const Real& x);

struct PeriodVector {
    int k = 0;
    std::vector<ComplexValue> values;  // r_0 .. r_{2k-2}
};

/// Regularized r_n(f) for f of weight 2k with vanishing constant term.
ComplexValue period_rn(const QSeries& f, int n, const EvaluationConfig& cfg);
PeriodVector periods(const QSeries& f, const EvaluationConfig& cfg);

/// Coefficients of r(f; z) indexed by the power of z: the coefficient of
/// z^{2k-2-n} is i^{1-n} C(2k-2, n) r_n(f).
std::vector<ComplexValue> period_polynomial(const PeriodVector& r);
std::vector<ComplexValue> period_polynomial(const QSeries& f, const EvaluationConfig& cfg);

/// Horner evaluation of a coefficient list at z.
Complex evaluate_polynomial(const std::vector<ComplexValue>& coeffs, const Complex& z);

/// sum_{n != 0} a_n n^{1-2k} q^n.
ComplexValue eichler_eval(const QSeries& f, const Complex& z, const EvaluationConfig& cfg);

/// Twisted L*(f, zeta_c^d, s) split at t0, for f of weight W with vanishing
/// constant term: sum_{m != 0} a_m zeta_c^{dm} Gamma(s, 2 pi m t0)/(2 pi m)^s
/// + i^{-W} c^{W-2s} sum_{m != 0} a_m zeta_c^{-am} Gamma(W-s, 2 pi m/(c^2 t0))/(2 pi m)^{W-s}
/// with a d = 1 mod c. Requires 1 <= s <= W-1.
ComplexValue lstar(const QSeries& f, long c, long d, const Rational& t0, int s, const EvaluationConfig& cfg);

/// The same with a constant term allowed; its two pieces are taken as the
/// finite parts -t0^s/s and -(c^2 t0)^{s-W}/(W-s).
ComplexValue lstar_regularized(const QSeries& f, long c, long d, const Rational& t0, int s,
                               const EvaluationConfig& cfg);

}  // namespace cyclelift
