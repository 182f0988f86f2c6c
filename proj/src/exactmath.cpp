#include "cyclelift/exactmath.hpp"

#include "cyclelift/errors.hpp"

#include <cstdlib>
#include <mutex>
#include <utility>

namespace cyclelift {

Rational make_rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const BigInt& n) { return n.get_str(); }

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError("not a rational: '" + s + "'");
    }
}

// --- elementary helpers -----------------------------------------------------

bool is_squarefree(long long n)
{
    if (n == 0) return false;
    unsigned long long m = n < 0 ? -static_cast<unsigned long long>(n) : n;
    for (unsigned long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return false;
        }
    }
    return true;
}

long long isqrt(long long n)
{
    if (n < 0) throw std::domain_error("isqrt of negative number");
    BigInt r;
    BigInt v(static_cast<long>(n));
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r.get_si();
}

bool is_perfect_square(long long n)
{
    if (n < 0) return false;
    long long r = isqrt(n);
    return r * r == n;
}

std::vector<long long> divisors(long long n)
{
    if (n <= 0) throw std::domain_error("divisors: n must be positive");
    std::vector<long long> lo, hi;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

int moebius(long long n)
{
    if (n <= 0) throw std::domain_error("moebius: n must be positive");
    int sign = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            sign = -sign;
        }
    }
    if (n > 1) sign = -sign;
    return sign;
}

BigInt int_pow(const BigInt& base, unsigned exponent)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

Rational rational_pow(const Rational& base, unsigned exponent)
{
    return make_rational(int_pow(base.get_num(), exponent), int_pow(base.get_den(), exponent));
}

BigInt divisor_sigma(long long n, unsigned power)
{
    BigInt s = 0;
    for (long long d : divisors(n)) s += int_pow(BigInt(static_cast<long>(d)), power);
    return s;
}

BigInt binomial(unsigned n, unsigned k)
{
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// --- discriminants -----------------------------------------------------------

namespace {

long long mod4(long long n) { return ((n % 4) + 4) % 4; }

}  // namespace

bool FundamentalDiscriminant::is_fundamental(long long v)
{
    if (v == 1) return true;
    if (v == 0) return false;
    if (mod4(v) == 1) return is_squarefree(v);
    if (mod4(v) != 0) return false;
    long long n = v / 4;
    return is_squarefree(n) && (mod4(n) == 2 || mod4(n) == 3);
}

FundamentalDiscriminant::FundamentalDiscriminant(long long value) : value_(value)
{
    if (!is_fundamental(value))
        throw InvalidDiscriminant(std::to_string(value) + " is not a fundamental discriminant");
}

DiscriminantSplit split_discriminant(long long D)
{
    if (D == 0 || mod4(D) > 1)
        throw InvalidDiscriminant(std::to_string(D) + " is not 0,1 mod 4");
    long long sign = D < 0 ? -1 : 1;
    long long m = D < 0 ? -D : D;
    long long core = 1, square_root = 1;
    for (long long p = 2; p * p <= m; ++p) {
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) square_root *= p;
        if (e % 2 == 1) core *= p;
    }
    core *= m;
    long long d0 = sign * core;
    if (mod4(d0) == 1) return {FundamentalDiscriminant(d0), square_root};
    // d0 = 2,3 mod 4 forces an even square root because D = 0 mod 4.
    return {FundamentalDiscriminant(4 * d0), square_root / 2};
}

// --- Bernoulli numbers -------------------------------------------------------

namespace {

std::mutex bernoulli_mutex;
std::vector<Rational>& bernoulli_table()
{
    static std::vector<Rational> table{Rational(1)};
    return table;
}

}  // namespace

Rational bernoulli(unsigned n)
{
    std::lock_guard<std::mutex> lock(bernoulli_mutex);
    auto& table = bernoulli_table();
    // sum_{j<=m} C(m+1, j) B_j = 0
    for (unsigned m = static_cast<unsigned>(table.size()); m <= n; ++m) {
        Rational acc = 0;
        for (unsigned j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * table[j];
        acc /= Rational(m + 1);
        table.push_back(-acc);
    }
    return table[n];
}

Rational bernoulli_polynomial(unsigned n, const Rational& x)
{
    Rational acc = 0;
    Rational xpow = 1;
    // Horner-free: accumulate from the x^0 term upwards.
    for (unsigned j = 0; j <= n; ++j) {
        acc += Rational(binomial(n, n - j)) * bernoulli(n - j) * xpow;
        xpow *= x;
    }
    return acc;
}

// --- Kronecker symbol --------------------------------------------------------

namespace {

bool is_even(long long n) { return (n & 1) == 0; }
bool is_even(const BigInt& n) { return mpz_even_p(n.get_mpz_t()) != 0; }
long long mod_nonneg(long long a, long long m) { return ((a % m) + m) % m; }
BigInt mod_nonneg(const BigInt& a, const BigInt& m)
{
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}
int small(long long n) { return static_cast<int>(n); }
int small(const BigInt& n) { return static_cast<int>(n.get_si()); }

// Cohen, "A Course in Computational Algebraic Number Theory", Alg. 1.4.10.
template <class Int>
int kronecker_impl(Int a, Int b)
{
    if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (is_even(a) && is_even(b)) return 0;
    int v = 0;
    while (is_even(b)) {
        b /= 2;
        ++v;
    }
    int k = 1;
    if (v % 2 == 1) {
        int r = small(mod_nonneg(a, Int(8)));
        if (r == 3 || r == 5) k = -k;
    }
    if (b < 0) {
        b = -b;
        if (a < 0) k = -k;
    }
    a = mod_nonneg(a, b);
    while (a != 0) {
        v = 0;
        while (is_even(a)) {
            a /= 2;
            ++v;
        }
        if (v % 2 == 1) {
            int r = small(mod_nonneg(b, Int(8)));
            if (r == 3 || r == 5) k = -k;
        }
        if (small(mod_nonneg(a, Int(4))) == 3 && small(mod_nonneg(b, Int(4))) == 3) k = -k;
        Int r = a;
        a = mod_nonneg(b, r);
        b = r;
    }
    return b == 1 ? k : 0;
}

}  // namespace

int kronecker(long long D, long long n) { return kronecker_impl<long long>(D, n); }
int kronecker(const BigInt& D, const BigInt& n) { return kronecker_impl<BigInt>(D, n); }

// --- L-values ----------------------------------------------------------------

Rational zeta_neg(int k)
{
    if (k < 1) throw std::domain_error("zeta_neg: k must be >= 1");
    if (k == 1) return Rational(-1, 2);
    return -bernoulli(static_cast<unsigned>(k)) / Rational(k);
}

Rational generalized_bernoulli(const FundamentalDiscriminant& D0, int k)
{
    if (k < 1) throw std::domain_error("generalized_bernoulli: k must be >= 1");
    // B_{k,chi} = F^{k-1} sum_{a=1}^{F} chi(a) B_k(a/F)
    long long F = D0.value() < 0 ? -D0.value() : D0.value();
    Rational acc = 0;
    for (long long a = 1; a <= F; ++a) {
        int chi = kronecker(D0.value(), a);
        if (chi == 0) continue;
        acc += Rational(chi) * bernoulli_polynomial(static_cast<unsigned>(k), make_rational(to_big(a), to_big(F)));
    }
    return acc * Rational(int_pow(BigInt(static_cast<long>(F)), static_cast<unsigned>(k - 1)));
}

Rational dirichlet_L_neg(const FundamentalDiscriminant& D0, int k)
{
    if (k < 1) throw std::domain_error("dirichlet_L_neg: k must be >= 1");
    return -generalized_bernoulli(D0, k) / Rational(k);
}

Rational cohen_H(int k, long long D)
{
    if (k < 1) throw std::domain_error("cohen_H: k must be >= 1");
    if (D == 0) return zeta_neg(2 * k);
    if (mod4(D) > 1) throw InvalidDiscriminant("H(k, D) needs D = 0,1 mod 4, got " + std::to_string(D));
    auto [D0, f] = split_discriminant(D);
    BigInt sum = 0;
    for (long long d : divisors(f)) {
        int mu = moebius(d);
        if (mu == 0) continue;
        int chi = kronecker(D0.value(), d);
        if (chi == 0) continue;
        sum += BigInt(mu * chi) * int_pow(BigInt(static_cast<long>(d)), static_cast<unsigned>(k - 1))
            * divisor_sigma(f / d, static_cast<unsigned>(2 * k - 1));
    }
    return dirichlet_L_neg(D0, k) * Rational(sum);
}

}  // namespace cyclelift
