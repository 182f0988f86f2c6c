#pragma once

// Exact arithmetic layer: Bernoulli numbers, Kronecker symbols, special
// L-values at non-positive integers, and Cohen's function H(k, D).

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cyclelift {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt to_big(long long v) { return BigInt(static_cast<long>(v)); }

/// Builds num/den in lowest terms with a positive denominator.
Rational make_rational(const BigInt& num, const BigInt& den = 1);

/// Always "num/den", also for integers ("5/1"); parse accepts both forms.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

std::string to_string(const BigInt& n);

/// A discriminant that is 1 or the discriminant of a quadratic field.
class FundamentalDiscriminant {
public:
    /// Throws InvalidDiscriminant unless `value` is fundamental.
    explicit FundamentalDiscriminant(long long value);

    static bool is_fundamental(long long value);

    long long value() const { return value_; }
    bool operator==(const FundamentalDiscriminant&) const = default;

private:
    long long value_;
};

/// D = D0 * conductor^2 with D0 fundamental.
struct DiscriminantSplit {
    FundamentalDiscriminant fundamental;
    long long conductor;
};

/// Requires D != 0 and D = 0,1 mod 4 (negative D allowed).
DiscriminantSplit split_discriminant(long long D);

// Elementary arithmetic helpers.
bool is_squarefree(long long n);
bool is_perfect_square(long long n);
long long isqrt(long long n);
std::vector<long long> divisors(long long n);  // positive divisors, ascending
int moebius(long long n);
BigInt divisor_sigma(long long n, unsigned power);
BigInt int_pow(const BigInt& base, unsigned exponent);
Rational rational_pow(const Rational& base, unsigned exponent);
BigInt binomial(unsigned n, unsigned k);

/// B_n with B_1 = -1/2. The table is memoized and guarded for concurrent use.
Rational bernoulli(unsigned n);

/// B_n(x) = sum_j C(n,j) B_j x^{n-j}.
Rational bernoulli_polynomial(unsigned n, const Rational& x);

/// Kronecker symbol (D/n); completely multiplicative in n.
int kronecker(long long D, long long n);
int kronecker(const BigInt& D, const BigInt& n);

/// zeta(1-k) for k >= 1.
Rational zeta_neg(int k);

/// B_{k,chi} for the Kronecker character of D0.
Rational generalized_bernoulli(const FundamentalDiscriminant& D0, int k);

/// L(1-k, (D0/.)) = -B_{k,chi}/k for k >= 1.
Rational dirichlet_L_neg(const FundamentalDiscriminant& D0, int k);

/// Cohen's H(k, D). D = 0 gives zeta(1-2k); other D must be 0,1 mod 4,
/// otherwise InvalidDiscriminant.
Rational cohen_H(int k, long long D);

}  // namespace cyclelift
