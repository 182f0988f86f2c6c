#include "cyclelift/qseries.hpp"

#include "cyclelift/errors.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace cyclelift {

namespace {

std::optional<int> sum_weight(const QSeries& a, const QSeries& b)
{
    if (a.weight() && b.weight() && *a.weight() != *b.weight())
        throw WeightMismatch("cannot add weight " + std::to_string(*a.weight()) + " and weight "
                             + std::to_string(*b.weight()));
    return a.weight() ? a.weight() : b.weight();
}

std::optional<int> product_weight(const QSeries& a, const QSeries& b)
{
    if (a.weight() && b.weight()) return *a.weight() + *b.weight();
    return std::nullopt;
}

BigInt common_denominator(std::span<const Rational> xs)
{
    BigInt den = 1;
    for (const auto& x : xs) {
        if (x.get_den() != 1) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    }
    return den;
}

std::vector<BigInt> scaled_numerators(std::span<const Rational> xs, const BigInt& den)
{
    std::vector<BigInt> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(x.get_num() * (den / x.get_den()));
    return out;
}

}  // namespace

QSeries::QSeries(long first, std::vector<Rational> coefficients, long truncation, std::optional<int> weight)
    : first_(first), coeffs_(std::move(coefficients)), truncation_(truncation), weight_(weight)
{
    if (first_ + static_cast<long>(coeffs_.size()) - 1 > truncation_)
        throw std::invalid_argument("QSeries: coefficients extend past the truncation");
    normalize();
}

void QSeries::normalize()
{
    auto lead = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c != 0; });
    first_ += static_cast<long>(lead - coeffs_.begin());
    coeffs_.erase(coeffs_.begin(), lead);
    // Pad implicit zeros so the dense vector always reaches the truncation.
    if (!coeffs_.empty()) coeffs_.resize(static_cast<size_t>(truncation_ - first_ + 1), Rational(0));
}

QSeries QSeries::zero(long truncation, std::optional<int> weight)
{
    return QSeries(0, {}, truncation, weight);
}

QSeries QSeries::monomial(long exponent, const Rational& c, long truncation, std::optional<int> weight)
{
    if (exponent > truncation) return zero(truncation, weight);
    return QSeries(exponent, {c}, truncation, weight);
}

QSeries QSeries::constant(const Rational& c, long truncation, std::optional<int> weight)
{
    return monomial(0, c, truncation, weight);
}

QSeries QSeries::with_weight(std::optional<int> w) const
{
    QSeries r = *this;
    r.weight_ = w;
    return r;
}

Rational QSeries::coefficient(long n) const
{
    if (n > truncation_)
        throw TruncationExceeded("coefficient q^" + std::to_string(n) + " requested, series known to q^"
                                 + std::to_string(truncation_));
    if (is_zero() || n < first_) return 0;
    return coeffs_[static_cast<size_t>(n - first_)];
}

QSeries QSeries::truncated(long N) const
{
    if (N > truncation_)
        throw TruncationExceeded("cannot extend truncation from " + std::to_string(truncation_) + " to "
                                 + std::to_string(N));
    if (is_zero() || N < first_) return zero(N, weight_);
    std::vector<Rational> c(coeffs_.begin(), coeffs_.begin() + (N - first_ + 1));
    return QSeries(first_, std::move(c), N, weight_);
}

QSeries operator+(const QSeries& a, const QSeries& b)
{
    auto w = sum_weight(a, b);
    long N = std::min(a.truncation(), b.truncation());
    long lo = std::min(a.valuation(), b.valuation());
    if (lo > N) return QSeries::zero(N, w);
    std::vector<Rational> c(static_cast<size_t>(N - lo + 1));
    for (long n = lo; n <= N; ++n) c[static_cast<size_t>(n - lo)] = a.coefficient(n) + b.coefficient(n);
    return QSeries(lo, std::move(c), N, w);
}

QSeries operator-(const QSeries& a) { return Rational(-1) * a; }

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const Rational& c, const QSeries& a)
{
    if (c == 0) return QSeries::zero(a.truncation(), a.weight());
    std::vector<Rational> out(a.coefficients().begin(), a.coefficients().end());
    for (auto& x : out) x *= c;
    return QSeries(a.valuation(), std::move(out), a.truncation(), a.weight());
}

QSeries operator*(const QSeries& a, const QSeries& b)
{
    auto w = product_weight(a, b);
    long va = a.valuation(), vb = b.valuation();
    long N = std::min(a.truncation() + vb, b.truncation() + va);
    if (a.is_zero() || b.is_zero() || va + vb > N) return QSeries::zero(N, w);

    // Convolve integer numerators over a common denominator.
    BigInt da = common_denominator(a.coefficients());
    BigInt db = common_denominator(b.coefficients());
    auto ia = scaled_numerators(a.coefficients(), da);
    auto ib = scaled_numerators(b.coefficients(), db);
    long len = N - (va + vb) + 1;
    std::vector<BigInt> acc(static_cast<size_t>(len));
    for (long i = 0; i < len && i < static_cast<long>(ia.size()); ++i) {
        if (ia[static_cast<size_t>(i)] == 0) continue;
        mpz_srcptr x = ia[static_cast<size_t>(i)].get_mpz_t();
        long jmax = std::min<long>(len - i, static_cast<long>(ib.size()));
        for (long j = 0; j < jmax; ++j)
            mpz_addmul(acc[static_cast<size_t>(i + j)].get_mpz_t(), x, ib[static_cast<size_t>(j)].get_mpz_t());
    }
    BigInt den = da * db;
    std::vector<Rational> c;
    c.reserve(acc.size());
    for (auto& x : acc) c.push_back(make_rational(x, den));
    return QSeries(va + vb, std::move(c), N, w);
}

QSeries invert(const QSeries& a)
{
    if (a.is_zero()) throw NotInvertible("zero series (leading coefficient vanishes)");
    long v = a.valuation();
    long len = a.truncation() - v + 1;  // relative precision
    auto w = a.weight() ? std::optional<int>(-*a.weight()) : std::nullopt;
    auto coeffs = a.coefficients();
    std::vector<Rational> out(static_cast<size_t>(len));

    BigInt den = common_denominator(coeffs);
    auto ia = scaled_numerators(coeffs, den);
    if (ia[0] == 1 || ia[0] == -1) {
        // Unit leading coefficient: the recursion stays integral.
        std::vector<BigInt> ib(static_cast<size_t>(len));
        const BigInt lead = ia[0];
        ib[0] = lead;
        BigInt s;
        for (long n = 1; n < len; ++n) {
            s = 0;
            for (long i = 1; i <= n; ++i) {
                if (ia[static_cast<size_t>(i)] == 0) continue;
                mpz_addmul(s.get_mpz_t(), ia[static_cast<size_t>(i)].get_mpz_t(), ib[static_cast<size_t>(n - i)].get_mpz_t());
            }
            ib[static_cast<size_t>(n)] = -s * lead;
        }
        for (long n = 0; n < len; ++n) out[static_cast<size_t>(n)] = make_rational(ib[static_cast<size_t>(n)] * den);
    } else {
        Rational inv_lead = 1 / coeffs[0];
        out[0] = inv_lead;
        for (long n = 1; n < len; ++n) {
            Rational s = 0;
            for (long i = 1; i <= n; ++i) s += coeffs[static_cast<size_t>(i)] * out[static_cast<size_t>(n - i)];
            out[static_cast<size_t>(n)] = -s * inv_lead;
        }
    }
    return QSeries(-v, std::move(out), -v + len - 1, w);
}

QSeries pow(const QSeries& a, int exponent)
{
    if (exponent < 0) return pow(invert(a), -exponent);
    if (exponent == 0) {
        // 1 is exact, but only as trustworthy as the relative precision of a.
        long rel = a.truncation() - a.valuation();
        return QSeries::constant(1, rel, a.weight() ? std::optional<int>(0) : std::nullopt);
    }
    QSeries result;
    bool have = false;
    QSeries base = a;
    unsigned e = static_cast<unsigned>(exponent);
    while (e > 0) {
        if (e & 1u) {
            result = have ? result * base : base;
            have = true;
        }
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

// --- concrete forms -----------------------------------------------------------

namespace {

std::vector<BigInt> sigma_table(long N, unsigned power)
{
    std::vector<BigInt> sigma(static_cast<size_t>(N + 1), 0);
    for (long d = 1; d <= N; ++d) {
        BigInt dp = int_pow(BigInt(d), power);
        for (long n = d; n <= N; n += d) sigma[static_cast<size_t>(n)] += dp;
    }
    return sigma;
}

void require_even_weight(int weight, int min)
{
    if (weight % 2 != 0 || weight < min)
        throw std::invalid_argument("weight must be even and >= " + std::to_string(min) + ", got "
                                    + std::to_string(weight));
}

}  // namespace

QSeries eisenstein_G(int weight, long N)
{
    require_even_weight(weight, 4);
    int k = weight / 2;
    auto sigma = sigma_table(N, static_cast<unsigned>(weight - 1));
    std::vector<Rational> c(static_cast<size_t>(N + 1));
    c[0] = -bernoulli(static_cast<unsigned>(weight)) / Rational(4 * k);
    for (long n = 1; n <= N; ++n) c[static_cast<size_t>(n)] = Rational(sigma[static_cast<size_t>(n)]);
    return QSeries(0, std::move(c), N, weight);
}

QSeries eisenstein_E(int weight, long N)
{
    if (weight == 0) return QSeries::constant(1, N, 0);
    if (weight == 14) return eisenstein_E(4, N) * eisenstein_E(4, N) * eisenstein_E(6, N);
    require_even_weight(weight, 4);
    QSeries g = eisenstein_G(weight, N);
    return (1 / g.constant_term()) * g;
}

QSeries delta(long N)
{
    if (N < 1) throw std::invalid_argument("delta: N must be >= 1");
    // prod (1 - q^n) by Euler's pentagonal number theorem, to exponent N-1.
    long M = N - 1;
    std::vector<Rational> euler(static_cast<size_t>(M + 1), 0);
    for (long k = 0;; ++k) {
        bool any = false;
        for (long g : {k * (3 * k - 1) / 2, k * (3 * k + 1) / 2}) {
            if (g <= M) {
                euler[static_cast<size_t>(g)] = (k % 2 == 0) ? 1 : -1;
                any = true;
            }
        }
        if (!any) break;
    }
    QSeries eta_part(0, std::move(euler), M);
    QSeries p24 = pow(eta_part, 24);
    QSeries shifted(1, std::vector<Rational>(p24.coefficients().begin(), p24.coefficients().end()), N, 12);
    return shifted;
}

QSeries j_function(long N)
{
    if (N < 1) throw std::invalid_argument("j_function: N must be >= 1");
    long W = N + 2;
    QSeries e4 = eisenstein_E(4, W);
    QSeries j = pow(e4, 3) * invert(delta(W));
    return j.truncated(N).with_weight(0);
}

long pivot_bound(int weight)
{
    if (weight % 2 != 0) throw std::invalid_argument("pivot_bound: weight must be even");
    long l = weight >= 0 ? weight / 12 : -((-weight + 11) / 12);
    if (((weight % 12) + 12) % 12 == 2) l -= 1;
    return l;
}

QSeries weakly_basis(int weight, long m, long N)
{
    long ell = pivot_bound(weight);
    if (m < -ell)
        throw NoSuchBasisElement("weight " + std::to_string(weight) + " has no form with leading q^"
                                 + std::to_string(-m) + " (orders are at most " + std::to_string(ell) + ")");
    int rest = weight - static_cast<int>(12 * ell);  // in {0,4,6,8,10,14}
    long degree = m + ell;                              // degree of the polynomial in j

    for (long W = N + degree + std::abs(ell) + 4;; W += degree + 8) {
        QSeries base = pow(delta(W), static_cast<int>(ell)) * eisenstein_E(rest, W);
        QSeries j = j_function(W);
        std::vector<QSeries> basis;  // basis[i] = f_{w, -ell + i}
        QSeries jpow = QSeries::constant(1, W, 0);
        for (long i = 0; i <= degree; ++i) {
            if (i > 0) jpow = jpow * j;
            QSeries g = (base * jpow).with_weight(weight);
            long lead = ell - i;
            for (long e = lead + 1; e <= ell; ++e) {
                Rational c = g.coefficient(e);
                if (c != 0) g = g - c * basis[static_cast<size_t>(ell - e)];
            }
            basis.push_back(std::move(g));
        }
        const QSeries& f = basis.back();
        if (f.truncation() >= N) return f.truncated(N);
    }
}

QSeries cusp_basis(int weight, long m, long N)
{
    if (m == 0) throw NoSuchBasisElement("a cusp form cannot have leading term q^0");
    QSeries f = weakly_basis(weight, m, N);
    Rational c0 = f.coefficient(0);
    if (c0 == 0) return f;
    if (weight < 4) throw NoSuchBasisElement("weight " + std::to_string(weight) + " has no Eisenstein series to remove the constant term");
    return f - c0 * eisenstein_E(weight, N).with_weight(weight);
}

QSeries bol(const QSeries& g, int k)
{
    if (k < 1) throw std::invalid_argument("bol: k must be >= 1");
    if (g.weight() && *g.weight() != 2 - 2 * k)
        throw WeightMismatch("bol(., " + std::to_string(k) + ") expects weight " + std::to_string(2 - 2 * k)
                             + ", got " + std::to_string(*g.weight()));
    std::vector<Rational> c(g.coefficients().begin(), g.coefficients().end());
    long v = g.valuation();
    unsigned e = static_cast<unsigned>(2 * k - 1);
    for (size_t i = 0; i < c.size(); ++i) {
        long n = v + static_cast<long>(i);
        if (c[i] != 0) c[i] *= Rational(int_pow(BigInt(n), e));
    }
    if (g.is_zero()) return QSeries::zero(g.truncation(), 2 * k);
    return QSeries(v, std::move(c), g.truncation(), 2 * k);
}

// --- half-integral weight ------------------------------------------------------

HalfIntegralSeries::HalfIntegralSeries(int k, std::vector<Rational> coefficients)
    : k_(k), coeffs_(std::move(coefficients))
{
    for (long m = 0; m < static_cast<long>(coeffs_.size()); ++m) {
        if (!admissible(k_, m) && coeffs_[static_cast<size_t>(m)] != 0)
            throw InvalidIndex("coefficient at inadmissible index " + std::to_string(m));
    }
}

bool HalfIntegralSeries::admissible(int k, long m)
{
    if (m < 0) return false;
    long s = (k % 2 == 0) ? m : -m;
    long r = ((s % 4) + 4) % 4;
    return r == 0 || r == 1;
}

Rational HalfIntegralSeries::coefficient(long m) const
{
    if (m > truncation())
        throw TruncationExceeded("coefficient q^" + std::to_string(m) + " past truncation "
                                 + std::to_string(truncation()));
    if (!admissible(k_, m)) return 0;
    return coeffs_[static_cast<size_t>(m)];
}

HalfIntegralSeries cohen_eisenstein(int k, long N)
{
    if (k < 2) throw std::invalid_argument("cohen_eisenstein: k must be >= 2");
    std::vector<Rational> c(static_cast<size_t>(N + 1), 0);
    c[0] = zeta_neg(2 * k);
    long sign = (k % 2 == 0) ? 1 : -1;
    for (long m = 1; m <= N; ++m) {
        if (HalfIntegralSeries::admissible(k, m)) c[static_cast<size_t>(m)] = cohen_H(k, sign * m);
    }
    return HalfIntegralSeries(k, std::move(c));
}

// --- serialization --------------------------------------------------------------

nlohmann::json to_json(const QSeries& f)
{
    nlohmann::json coeffs = nlohmann::json::object();
    auto c = f.coefficients();
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) coeffs[std::to_string(f.valuation() + static_cast<long>(i))] = to_string(c[i]);
    }
    nlohmann::json j;
    j["weight"] = f.weight() ? nlohmann::json(*f.weight()) : nlohmann::json(nullptr);
    j["valuation"] = f.valuation();
    j["truncation"] = f.truncation();
    j["coefficients"] = std::move(coeffs);
    return j;
}

QSeries series_from_json(const nlohmann::json& j)
{
    try {
        long truncation = j.at("truncation").get<long>();
        std::optional<int> weight;
        if (j.contains("weight") && !j.at("weight").is_null()) weight = j.at("weight").get<int>();
        std::map<long, Rational> entries;
        for (const auto& [key, value] : j.at("coefficients").items())
            entries[std::stol(key)] = parse_rational(value.get<std::string>());
        if (entries.empty()) return QSeries::zero(truncation, weight);
        long first = entries.begin()->first;
        long last = entries.rbegin()->first;
        if (last > truncation) throw ParseError("coefficient past truncation");
        std::vector<Rational> c(static_cast<size_t>(last - first + 1), 0);
        for (const auto& [n, v] : entries) c[static_cast<size_t>(n - first)] = v;
        QSeries f(first, std::move(c), truncation, weight);
        if (j.contains("valuation") && j.at("valuation").get<long>() != f.valuation())
            throw ParseError("stored valuation disagrees with coefficients");
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed series JSON: ") + e.what());
    }
}

}  // namespace cyclelift
