#pragma once

// Exact q-expansions with explicit truncation, and the concrete modular
// forms used throughout: Eisenstein series, Delta, j, echelon bases of
// weakly holomorphic spaces, the Bol operator and Cohen's Eisenstein series.

#include "cyclelift/exactmath.hpp"

#include "json.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cyclelift {

/// Laurent q-expansion sum_{n >= valuation} a_n q^n known exactly for all
/// exponents n <= truncation. Asking for a coefficient past the truncation is
/// an error, never a silent zero.
class QSeries {
public:
    QSeries() = default;

    /// Coefficients for exponents first, first+1, ..., truncation.
    QSeries(long first, std::vector<Rational> coefficients, long truncation,
            std::optional<int> weight = std::nullopt);

    static QSeries zero(long truncation, std::optional<int> weight = std::nullopt);
    static QSeries monomial(long exponent, const Rational& c, long truncation,
                            std::optional<int> weight = std::nullopt);
    /// Exact constant; `truncation` is how far the caller vouches for it.
    static QSeries constant(const Rational& c, long truncation,
                            std::optional<int> weight = std::nullopt);

    bool is_zero() const { return coeffs_.empty(); }
    /// First nonzero exponent; truncation + 1 for the zero series.
    long valuation() const { return is_zero() ? truncation_ + 1 : first_; }
    long truncation() const { return truncation_; }
    std::optional<int> weight() const { return weight_; }
    QSeries with_weight(std::optional<int> w) const;

    /// Throws TruncationExceeded for n > truncation.
    Rational coefficient(long n) const;
    Rational constant_term() const { return coefficient(0); }

    /// Dense coefficients from valuation() to truncation().
    std::span<const Rational> coefficients() const { return coeffs_; }

    /// Drops everything above N (N <= truncation).
    QSeries truncated(long N) const;

    friend bool operator==(const QSeries&, const QSeries&) = default;

private:
    void normalize();

    long first_ = 0;
    std::vector<Rational> coeffs_;
    long truncation_ = -1;
    std::optional<int> weight_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(const Rational& c, const QSeries& a);

/// 1/a; throws NotInvertible for the zero series.
QSeries invert(const QSeries& a);
QSeries pow(const QSeries& a, int exponent);

/// Weight-tagged G_{2k} = -B_{2k}/(4k) + sum sigma_{2k-1}(n) q^n.
QSeries eisenstein_G(int weight, long N);
/// Normalized E_w with constant term 1; E_0 = 1, E_14 = E_4^2 E_6.
QSeries eisenstein_E(int weight, long N);
QSeries delta(long N);
QSeries j_function(long N);

/// ell_w: largest forced order of vanishing at infinity in weight w.
long pivot_bound(int weight);

/// f_{w,m} = q^{-m} + O(q^{ell_w + 1}) in M^!_w, for m >= -ell_w.
QSeries weakly_basis(int weight, long m, long N);

/// The element q^{-m} + O(q) of S^!_w: f_{w,m} with its constant term
/// removed by E_w when needed.
QSeries cusp_basis(int weight, long m, long N);

/// a_n -> n^{2k-1} a_n, from weight 2-2k to weight 2k.
QSeries bol(const QSeries& g, int k);

/// Half-integral weight series supported on m with (-1)^k m = 0,1 mod 4.
class HalfIntegralSeries {
public:
    HalfIntegralSeries(int k, std::vector<Rational> coefficients);

    int k() const { return k_; }
    long truncation() const { return static_cast<long>(coeffs_.size()) - 1; }
    static bool admissible(int k, long m);
    /// Zero off the support; TruncationExceeded past the truncation.
    Rational coefficient(long m) const;

private:
    int k_;
    std::vector<Rational> coeffs_;
};

HalfIntegralSeries cohen_eisenstein(int k, long N);

/// {weight, valuation, truncation, coefficients: {"n": "num/den"}}, nonzero
/// coefficients only.
nlohmann::json to_json(const QSeries& f);
QSeries series_from_json(const nlohmann::json& j);

}  // namespace cyclelift
