#include "cyclelift/analytic.hpp"

#include "cyclelift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cyclelift {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kLn2 = 0.693147180559945309417232121458;
constexpr double kInf = std::numeric_limits<double>::infinity();

int weight_of(const QSeries& f)
{
    if (!f.weight()) throw WeightMismatch("series carries no weight tag");
    if (*f.weight() % 2 != 0) throw WeightMismatch("odd weight " + std::to_string(*f.weight()));
    return *f.weight();
}

void require_cuspidal(const QSeries& f)
{
    if (!f.is_zero() && f.valuation() <= 0 && f.coefficient(0) != 0)
        throw ConstantTermPresent("constant term " + to_string(f.coefficient(0)));
}

unsigned extra_bits(double log_magnitude)
{
    return static_cast<unsigned>(std::max(0.0, log_magnitude) / kLn2) + 16;
}

double ulp() { return std::ldexp(1.0, -static_cast<int>(current_precision_bits()) + 4); }

double absolute_target(const EvaluationConfig& cfg) { return std::ldexp(1.0, -static_cast<int>(cfg.prec_bits)); }

[[noreturn]] void throw_truncation(const NumericSeries& s, double y, double target, double tail)
{
    long needed = s.terms_required(y, target);
    throw TruncationExceeded("tail " + std::to_string(tail) + " at Im z = " + std::to_string(y)
                             + " exceeds the tolerance; truncation " + std::to_string(s.truncation())
                             + " is too small, about N = " + std::to_string(needed) + " is needed");
}

// Number of terms to use at height y, checking the tolerance.
long plan_terms(const NumericSeries& s, double y, const EvaluationConfig& cfg, double& tail)
{
    long M = s.terms_for(y, absolute_target(cfg));
    tail = s.tail(M, y);
    if (tail > cfg.tol * 1e-3) throw_truncation(s, y, cfg.tol * 1e-3, tail);
    return M;
}

Real factorial_real(int n)
{
    Real r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

double GrowthBound::log_term(double n) const { return log_A + B * std::sqrt(n); }

double log_abs(const Rational& x)
{
    if (x == 0) return -kInf;
    long e_num = 0, e_den = 0;
    double m_num = mpz_get_d_2exp(&e_num, x.get_num_mpz_t());
    double m_den = mpz_get_d_2exp(&e_den, x.get_den_mpz_t());
    return std::log(std::abs(m_num)) - std::log(m_den) + static_cast<double>(e_num - e_den) * kLn2;
}

GrowthBound fit_growth(const QSeries& f)
{
    GrowthBound g;
    long N = f.truncation();
    auto collect = [&](long from) {
        std::vector<std::pair<double, double>> pts;
        for (long n = std::max(from, f.valuation()); n <= N; ++n) {
            if (n < 1) continue;
            double l = log_abs(f.coefficient(n));
            if (std::isfinite(l)) pts.emplace_back(std::sqrt(static_cast<double>(n)), l);
        }
        return pts;
    };
    auto pts = collect(std::max(1L, N / 2));
    if (pts.size() < 2) pts = collect(1);
    if (pts.empty()) return g;

    double slope = 0.0;
    if (pts.size() >= 2) {
        double mx = 0, my = 0;
        for (auto [x, y] : pts) mx += x, my += y;
        mx /= static_cast<double>(pts.size());
        my /= static_cast<double>(pts.size());
        double sxx = 0, sxy = 0;
        for (auto [x, y] : pts) sxx += (x - mx) * (x - mx), sxy += (x - mx) * (y - my);
        if (sxx > 0) slope = sxy / sxx;
    }
    g.B = std::max(slope, 0.0) + 0.05;
    double best = -kInf;
    for (auto [x, y] : collect(1)) best = std::max(best, y - g.B * x);
    g.log_A = best + std::log(2.0);
    return g;
}

double peak_log_term(const QSeries& f, double y)
{
    double best = -kInf;
    long n = f.valuation();
    for (const auto& a : f.coefficients()) {
        double l = log_abs(a);
        if (std::isfinite(l)) best = std::max(best, l - kTwoPi * static_cast<double>(n) * y);
        ++n;
    }
    return best;
}

NumericSeries::NumericSeries(const QSeries& f)
    : valuation_(f.valuation()), truncation_(f.truncation()), growth_(fit_growth(f))
{
    if (f.is_zero()) return;
    coeffs_.reserve(f.coefficients().size());
    log_abs_.reserve(f.coefficients().size());
    for (const auto& a : f.coefficients()) {
        coeffs_.push_back(to_real(a));
        log_abs_.push_back(log_abs(a));
    }
}

double NumericSeries::tail(long M, double y) const
{
    if (is_zero()) return 0.0;
    double total = 0.0;
    for (long n = std::max(M + 1, valuation_); n <= truncation_; ++n) {
        double l = log_coefficient(n);
        if (std::isfinite(l)) total += std::exp(l - kTwoPi * static_cast<double>(n) * y);
    }
    // Envelope beyond the truncation: explicit terms until the ratio of
    // consecutive envelope terms is safely below 1, then a geometric bound.
    if (growth_.vanishes()) return total;
    if (y <= 0) return kInf;
    auto log_env = [&](double n) { return growth_.log_term(n) - kTwoPi * n * y; };
    long n = std::max(M, truncation_) + 1;
    for (long walked = 0; walked < 4096; ++walked, ++n) {
        double term = std::exp(log_env(static_cast<double>(n)));
        double rho = std::exp(growth_.B / (2.0 * std::sqrt(static_cast<double>(n))) - kTwoPi * y);
        if (rho < 0.9) return total + term / (1.0 - rho);
        total += term;
    }
    // Slow decay: the consecutive ratio exp(B/(2 sqrt n) - 2 pi y) falls to
    // r_t at n_t; bound the stretch before n_t by its length times its peak.
    double r_t = std::max(0.9, 0.5 * (1.0 + std::exp(-kTwoPi * y)));
    double slack = kTwoPi * y + std::log(r_t);
    double n_t = std::ceil(std::pow(growth_.B / (2.0 * slack), 2));
    if (n_t <= static_cast<double>(n)) {
        double rho = std::exp(growth_.B / (2.0 * std::sqrt(static_cast<double>(n))) - kTwoPi * y);
        return total + std::exp(log_env(static_cast<double>(n))) / (1.0 - rho);
    }
    double x_peak = std::pow(growth_.B / (2.0 * kTwoPi * y), 2);
    double x = std::clamp(x_peak, static_cast<double>(n), n_t);
    total += (n_t - static_cast<double>(n)) * std::exp(log_env(x));
    return total + std::exp(log_env(n_t)) / (1.0 - r_t);
}

long NumericSeries::terms_for(double y, double target) const
{
    if (is_zero()) return truncation_;
    double acc = tail(truncation_, y);
    if (acc > target) return truncation_;
    long M = truncation_;
    while (M > std::max(valuation_, 0L)) {
        double l = log_coefficient(M);
        double next = acc + (std::isfinite(l) ? std::exp(l - kTwoPi * static_cast<double>(M) * y) : 0.0);
        if (next > target) break;
        acc = next;
        --M;
    }
    return M;
}

long NumericSeries::terms_required(double y, double target) const
{
    if (tail(truncation_, y) <= target) return terms_for(y, target);
    long hi = std::max(2 * truncation_, 16L);
    while (tail(hi, y) > target) {
        if (hi > 100000000L) return hi;
        hi *= 2;
    }
    long lo = truncation_;
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        (tail(mid, y) > target ? lo : hi) = mid;
    }
    return hi;
}

double NumericSeries::log_scale(double y) const
{
    if (is_zero()) return -kInf;
    double peak = -kInf;
    for (long n = valuation_; n <= truncation_; ++n)
        peak = std::max(peak, log_coefficient(n) - kTwoPi * static_cast<double>(n) * y);
    double sum = 0.0;
    for (long n = valuation_; n <= truncation_; ++n) {
        double l = log_coefficient(n);
        if (std::isfinite(l)) sum += std::exp(l - kTwoPi * static_cast<double>(n) * y - peak);
    }
    double t = tail(truncation_, y);
    return peak + std::log(sum + (std::isfinite(t) ? t * std::exp(-peak) : 0.0));
}

ComplexValue NumericSeries::evaluate(const Complex& z, long M, double tail_bound) const
{
    if (is_zero() || M < valuation_) return {Complex(0), tail_bound >= 0 ? tail_bound : tail(M, to_double(z.im))};
    Real two_pi = 2 * pi_real();
    Complex q = exp(Complex(-two_pi * z.im, two_pi * z.re));
    double y = to_double(z.im);
    double aq = std::exp(-kTwoPi * y);
    long top = std::min(M, truncation_);
    Complex sum(0);
    double abs_sum = 0.0;
    for (long n = top; n >= valuation_; --n) {
        sum *= q;
        const Real& a = coefficient(n);
        sum.re += a;
        abs_sum = abs_sum * aq + std::exp(log_coefficient(n));
    }
    if (valuation_ != 0) {
        sum *= pow(q, static_cast<int>(valuation_));
        abs_sum *= std::exp(-kTwoPi * y * static_cast<double>(valuation_));
    }
    double t = tail_bound >= 0 ? tail_bound : tail(top, y);
    return {sum, t + abs_sum * ulp() * static_cast<double>(top - valuation_ + 2)};
}

ComplexValue eval_qseries(const QSeries& f, const Complex& z, long N, const EvaluationConfig& cfg)
{
    if (N > f.truncation())
        throw TruncationExceeded("requested " + std::to_string(N) + " terms of a series known to "
                                 + std::to_string(f.truncation()));
    double y = to_double(z.im);
    if (!(y > 0)) throw std::invalid_argument("eval_qseries needs Im z > 0");
    PrecisionScope scope(cfg.prec_bits + extra_bits(peak_log_term(f, y)));
    NumericSeries s(f.truncated(N));
    double tail = 0.0;
    long M = plan_terms(s, y, cfg, tail);
    return s.evaluate(Complex(z.re, z.im), M, tail);
}

ComplexValue inc_gamma(int s, const Complex& x, bool* branch_cut)
{
    if (branch_cut) *branch_cut = false;
    if (s < 0) throw std::invalid_argument("inc_gamma needs s >= 0");
    if (s >= 1) {
        Complex term(1), sum(0);
        double abs_sum = 0.0;
        double ax = to_double(abs(x));
        double aterm = 1.0;
        for (int j = 0; j < s; ++j) {
            sum += term;
            abs_sum += aterm;
            term = term * x / Real(j + 1);
            aterm *= ax / (j + 1);
        }
        Complex value = factorial_real(s - 1) * (exp(-x) * sum);
        double scale = to_double(factorial_real(s - 1)) * std::exp(-to_double(x.re)) * abs_sum;
        return {value, scale * ulp() * (s + 2)};
    }

    if (x.im == 0 && x.re == 0) throw std::domain_error("Gamma(0, 0) is infinite");
    bool on_cut = x.im == 0 && x.re < 0;
    if (branch_cut) *branch_cut = on_cut;
    // The series cancels down to e^{-x}; carry enough guard bits.
    double ax = to_double(abs(x));
    unsigned bits = current_precision_bits();
    Complex value;
    {
        PrecisionScope scope(bits + static_cast<unsigned>(1.5 * ax / kLn2) + 16);
        Complex xx(Real(x.re), Real(x.im));
        Real gamma_e;
        mpfr_const_euler(gamma_e.backend().data(), MPFR_RNDN);
        Complex logx = log(xx);
        if (on_cut) logx.im = pi_real();
        Complex term(1), series(0);
        Complex minus_x = -xx;
        Real eps = boost::multiprecision::ldexp(Real(1), -static_cast<int>(current_precision_bits()));
        for (int n = 1; n < 100000; ++n) {
            term = term * minus_x / Real(n);
            Complex contrib = term / Real(n);
            series += contrib;
            if (n > ax && abs(contrib) < eps) break;
        }
        Complex total = Complex(-gamma_e) - logx - series;
        value = total;
    }
    return {Complex(Real(value.re), Real(value.im)), to_double(abs(value)) * ulp() * 4 + ulp()};
}

Real gamma_ratio(int j, const Real& x)
{
    Real term = 1, sum = 0;
    for (int i = 0; i < j; ++i) {
        sum += term;
        term = term * x / (i + 1);
    }
    return factorial_real(j - 1) * boost::multiprecision::exp(-x) * sum / boost::multiprecision::pow(x, j);
}

PeriodVector periods(const QSeries& f, const EvaluationConfig& cfg)
{
    int w = weight_of(f);
    int k = w / 2;
    if (k < 1) throw WeightMismatch("periods need weight >= 2");
    require_cuspidal(f);
    PeriodVector out{k, std::vector<ComplexValue>(static_cast<size_t>(2 * k - 1))};
    if (f.is_zero()) return out;

    PrecisionScope scope(cfg.prec_bits + extra_bits(peak_log_term(f, 1.0)));
    NumericSeries s(f);
    double tail = 0.0;
    long M = plan_terms(s, 1.0, cfg, tail);

    std::vector<Real> r(static_cast<size_t>(2 * k - 1), Real(0));
    std::vector<double> mag(r.size(), 0.0);
    Real two_pi = 2 * pi_real();
    int sign = k % 2 == 0 ? 1 : -1;
    for (long m = s.valuation(); m <= M; ++m) {
        if (m == 0 || !std::isfinite(s.log_coefficient(m))) continue;
        Real x = two_pi * m;
        std::vector<Real> G(static_cast<size_t>(2 * k), Real(0));
        for (int j = 1; j <= 2 * k - 1; ++j) G[static_cast<size_t>(j)] = gamma_ratio(j, x);
        const Real& a = s.coefficient(m);
        for (int n = 0; n <= 2 * k - 2; ++n) {
            Real term = a * (G[static_cast<size_t>(n + 1)] + sign * G[static_cast<size_t>(2 * k - 1 - n)]);
            mag[static_cast<size_t>(n)] += std::abs(to_double(term));
            r[static_cast<size_t>(n)] += term;
        }
    }
    for (size_t n = 0; n < r.size(); ++n)
        out.values[n] = {Complex(r[n]), 2.0 * std::exp(1.0) * tail + mag[n] * ulp() * 8};
    return out;
}

ComplexValue period_rn(const QSeries& f, int n, const EvaluationConfig& cfg)
{
    int k = weight_of(f) / 2;
    if (n < 0 || n > 2 * k - 2) throw std::out_of_range("period index " + std::to_string(n));
    return periods(f, cfg).values[static_cast<size_t>(n)];
}

std::vector<ComplexValue> period_polynomial(const PeriodVector& r)
{
    int w = 2 * r.k - 2;
    std::vector<ComplexValue> poly(static_cast<size_t>(w + 1));
    for (int n = 0; n <= w; ++n) {
        Complex factor = to_real(binomial(static_cast<unsigned>(w), static_cast<unsigned>(n))) * i_pow(1 - n);
        poly[static_cast<size_t>(w - n)] = factor * r.values[static_cast<size_t>(n)];
    }
    return poly;
}

std::vector<ComplexValue> period_polynomial(const QSeries& f, const EvaluationConfig& cfg)
{
    return period_polynomial(periods(f, cfg));
}

Complex evaluate_polynomial(const std::vector<ComplexValue>& coeffs, const Complex& z)
{
    Complex acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + it->value;
    return acc;
}

ComplexValue eichler_eval(const QSeries& f, const Complex& z, const EvaluationConfig& cfg)
{
    int k = weight_of(f) / 2;
    require_cuspidal(f);
    std::vector<Rational> coeffs;
    long n = f.valuation();
    for (const auto& a : f.coefficients()) {
        coeffs.push_back(n == 0 ? Rational(0) : Rational(a / rational_pow(Rational(n), 2 * k - 1)));
        ++n;
    }
    QSeries e(f.valuation(), std::move(coeffs), f.truncation(), 2 - 2 * k);
    return eval_qseries(e, z, e.truncation(), cfg);
}

namespace {

ComplexValue lstar_impl(const QSeries& f, long c, long d, const Rational& t0, int s, const EvaluationConfig& cfg,
                        bool allow_constant)
{
    int W = weight_of(f);
    if (c < 1) throw std::invalid_argument("lstar needs c >= 1");
    if (s < 1 || s > W - 1) throw std::invalid_argument("lstar needs 1 <= s <= W - 1");
    if (t0 <= 0) throw std::invalid_argument("lstar needs t0 > 0");
    long dm = ((d % c) + c) % c;
    if (std::gcd(dm, c) != 1) throw NonInvertibleTwist("gcd(" + std::to_string(d) + ", " + std::to_string(c) + ") > 1");
    if (!allow_constant) require_cuspidal(f);
    if (f.is_zero()) return {};

    long a = 0;
    for (long x = 0; x < c; ++x)
        if ((x * dm) % c == 1 % c) a = x;

    double y1 = to_double(to_real(t0));
    double y2 = 1.0 / (static_cast<double>(c) * static_cast<double>(c) * y1);
    double pref = (W - 2 * s) * std::log(static_cast<double>(c));
    double peak = std::max(peak_log_term(f, y1), peak_log_term(f, y2) + pref);
    PrecisionScope scope(cfg.prec_bits + extra_bits(peak));

    NumericSeries series(f);
    double tail = 0.0;
    long M = plan_terms(series, std::min(y1, y2), cfg, tail);

    std::vector<Complex> zeta(static_cast<size_t>(c));
    for (long r = 0; r < c; ++r) zeta[static_cast<size_t>(r)] = root_of_unity(r, c);
    auto zeta_pow = [&](long e) { return zeta[static_cast<size_t>(((e % c) + c) % c)]; };

    Real T0 = to_real(t0);
    Real T1 = 1 / (Real(c) * Real(c) * T0);  // 1/(c^2 t0)
    Real two_pi = 2 * pi_real();
    Real scale1 = boost::multiprecision::pow(T0, s);
    Real scale2 = boost::multiprecision::pow(T1, W - s);
    Complex outer = boost::multiprecision::pow(Real(c), W - 2 * s) * i_pow(-W);

    Complex first(0), second(0);
    double mag = 0.0;
    for (long m = series.valuation(); m <= M; ++m) {
        if (!std::isfinite(series.log_coefficient(m))) continue;
        const Real& am = series.coefficient(m);
        if (m == 0) {
            first += Complex(-am * scale1 / s);
            second += Complex(-am * scale2 / (W - s));
            mag += std::abs(to_double(am * (scale1 + scale2)));
            continue;
        }
        Real g1 = am * scale1 * gamma_ratio(s, two_pi * m * T0);
        Real g2 = am * scale2 * gamma_ratio(W - s, two_pi * m * T1);
        first += g1 * zeta_pow(dm * m);
        second += g2 * zeta_pow(-a * m);
        mag += std::abs(to_double(g1)) + std::abs(to_double(g2)) * std::exp(pref);
    }
    Complex value = first + outer * second;
    double tail_factor = std::exp(1.0) * (to_double(scale1) + to_double(scale2) * std::exp(pref));
    return {value, tail * tail_factor + mag * ulp() * 8};
}

}  // namespace

ComplexValue lstar(const QSeries& f, long c, long d, const Rational& t0, int s, const EvaluationConfig& cfg)
{
    return lstar_impl(f, c, d, t0, s, cfg, false);
}

ComplexValue lstar_regularized(const QSeries& f, long c, long d, const Rational& t0, int s,
                               const EvaluationConfig& cfg)
{
    return lstar_impl(f, c, d, t0, s, cfg, true);
}

}  // namespace cyclelift
