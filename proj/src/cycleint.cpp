#include "cyclelift/cycleint.hpp"

#include "cyclelift/errors.hpp"
#include "cyclelift/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace cyclelift {

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;

int half_weight(const QSeries& f)
{
    if (!f.weight() || *f.weight() % 2 != 0 || *f.weight() < 2)
        throw WeightMismatch("cycle integrals need an even weight 2k >= 2");
    return *f.weight() / 2;
}

std::string name(const QuadraticForm& Q)
{
    std::ostringstream os;
    os << Q;
    return os.str();
}

bool is_cuspidal(const QSeries& f) { return f.is_zero() || f.valuation() > 0 || f.coefficient(0) == 0; }

Complex form_at(const QuadraticForm& F, const Complex& z)
{
    return (to_real(F.a) * z + Complex(to_real(F.b))) * z + Complex(to_real(F.c));
}

double abs_d(const BigInt& x) { return std::abs(x.get_d()); }

}  // namespace

std::string to_string(Route route)
{
    switch (route) {
    case Route::quadrature: return "quadrature";
    case Route::periods: return "periods";
    case Route::lstar: return "lstar";
    case Route::eisenstein_regularized: return "eisenstein_regularized";
    }
    return "unknown";
}

ComplexValue cycle_integral_quadrature_at(const QSeries& f, const QuadraticForm& Q, const Complex& z0_in,
                                          const EvaluationConfig& cfg)
{
    int k = half_weight(f);
    BigInt D = Q.discriminant();
    if (D <= 0) throw InvalidDiscriminant("discriminant " + D.get_str() + " is not positive");
    if (is_square_discriminant(D)) throw SquareDiscriminant("quadrature route needs a non-square discriminant");
    if (to_double(z0_in.im) <= 0) throw std::invalid_argument("base point must lie in the upper half-plane");
    if (f.is_zero()) return {};

    ReductionCycle cyc = cycle(reduce(Q).form);

    // Height and size of the path decide the working precision.
    double x0 = to_double(z0_in.re), y0 = to_double(z0_in.im);
    double r2 = x0 * x0 + y0 * y0;
    double y_min = y0;
    double log_poly = 0.0;
    for (size_t j = 0; j < cyc.forms.size(); ++j) {
        double m = cyc.steps[j].get_d();
        double wx = -m - x0 / r2, wy = y0 / r2;
        y_min = std::min(y_min, wy);
        double zmax = std::max(std::sqrt(r2), std::hypot(wx, wy));
        const auto& F = cyc.forms[j];
        double bound = abs_d(F.a) * zmax * zmax + abs_d(F.b) * zmax + abs_d(F.c);
        log_poly = std::max(log_poly, (k - 1) * std::log(std::max(bound, 1.0)));
    }
    double peak = peak_log_term(f, y_min) + log_poly;
    PrecisionScope scope(cfg.prec_bits + static_cast<unsigned>(std::max(0.0, peak) / kLn2) + 16);

    NumericSeries s(f);
    long M = s.terms_for(y_min, std::ldexp(1.0, -static_cast<int>(cfg.prec_bits)));
    double tail = s.tail(M, y_min);
    if (tail > cfg.tol * 1e-3) {
        long needed = s.terms_required(y_min, cfg.tol * 1e-3);
        throw TruncationExceeded("cycle integral at Im z >= " + std::to_string(y_min) + " needs about N = "
                                 + std::to_string(needed) + " terms, have " + std::to_string(s.truncation()));
    }

    auto rule = gauss_legendre(cfg.quad_degree);
    Complex z0(Real(z0_in.re), Real(z0_in.im));
    Complex total(0);
    double error = 0.0;
    for (size_t j = 0; j < cyc.forms.size(); ++j) {
        const auto& F = cyc.forms[j];
        Complex w = Complex(-to_real(cyc.steps[j])) - Complex(1) / z0;
        Complex delta = w - z0;
        double length = to_double(abs(delta));
        int pieces = std::max(1, static_cast<int>(std::ceil(length / 0.5)));
        for (int p = 0; p < pieces; ++p) {
            Complex half = delta / Real(2 * pieces);
            Complex mid = z0 + delta * Complex(Real(2 * p + 1) / Real(2 * pieces));
            Complex piece(0);
            for (size_t i = 0; i < rule->nodes.size(); ++i) {
                Complex z = mid + half * Complex(rule->nodes[i]);
                ComplexValue fz = s.evaluate(z, M, tail);
                Complex poly = pow(form_at(F, z), k - 1);
                piece += rule->weights[i] * (fz.value * poly);
                error += to_double(rule->weights[i]) * to_double(abs(half)) * fz.error * to_double(abs(poly));
            }
            total += half * piece;
        }
    }
    return {total, error};
}

CycleIntegralResult cycle_integral_quadrature(const QSeries& f, const QuadraticForm& Q, const EvaluationConfig& cfg)
{
    int k = half_weight(f);
    PrecisionScope scope(cfg.prec_bits);
    ComplexValue first = cycle_integral_quadrature_at(f, Q, Complex(0.0, 1.0), cfg);
    ComplexValue second = cycle_integral_quadrature_at(f, Q, Complex(Real(1) / 4, Real(11) / 10), cfg);
    double gap = to_double(abs(first.value - second.value));
    double scale = 1.0 + to_double(abs(first.value));
    if (gap > std::max(cfg.tol * scale, 10.0 * (first.error + second.error)))
        throw ToleranceNotMet("cycle integral of " + name(Q) + " depends on the base point: gap "
                              + std::to_string(gap));
    first.error = std::max(first.error, gap);
    return {first, Route::quadrature, Q, k};
}

CycleIntegralResult cycle_integral_periods(const QSeries& f, const QuadraticForm& Q, const EvaluationConfig& cfg)
{
    int k = half_weight(f);
    BigInt D = Q.discriminant();
    if (is_square_discriminant(D)) throw SquareDiscriminant("period route needs a non-square discriminant");
    if (!is_cuspidal(f)) throw ConstantTermPresent("period route needs a vanishing constant term");
    CyclePolynomial poly = cycle_polynomial(k, Q);
    PeriodVector r = periods(f, cfg);
    PrecisionScope scope(cfg.prec_bits + 32);
    ComplexValue total;
    for (int n = 0; n <= 2 * k - 2; ++n) {
        Complex factor = to_real(poly.coeffs[static_cast<size_t>(n)]) * i_pow(1 - n);
        total = total + factor * r.values[static_cast<size_t>(n)];
    }
    return {total, Route::periods, Q, k};
}

SquareTwist square_twist(const QuadraticForm& Q)
{
    BigInt D = Q.discriminant();
    if (!is_square_discriminant(D) || D == 0)
        throw NonSquareDiscriminant("discriminant " + D.get_str() + " is not a nonzero square");
    QuadraticForm R = (Q.a == 0 && Q.b > 0 && Q.c >= 0 && Q.c < Q.b) ? Q : reduce(Q).form;
    long s = R.b.get_si();
    long c = R.c.get_si();
    long g = std::gcd(c, s);
    long cp = s / g;
    long d = (((-c / g) % cp) + cp) % cp;
    return {s, cp, d};
}

namespace {

CycleIntegralResult square_route(const QSeries& f, const QuadraticForm& Q, const EvaluationConfig& cfg,
                                 std::optional<Rational> t0, bool regularized)
{
    int k = half_weight(f);
    SquareTwist tw = square_twist(Q);
    Rational t = t0 ? *t0 : make_rational(1, tw.c);
    ComplexValue L = regularized ? lstar_regularized(f, tw.c, tw.d, t, k, cfg) : lstar(f, tw.c, tw.d, t, k, cfg);
    PrecisionScope scope(cfg.prec_bits + 32);
    Complex factor = boost::multiprecision::pow(Real(tw.s), k - 1) * i_pow(k);
    return {factor * L, regularized ? Route::eisenstein_regularized : Route::lstar, Q, k};
}

}  // namespace

CycleIntegralResult cycle_integral_square(const QSeries& f, const QuadraticForm& Q, const EvaluationConfig& cfg,
                                          std::optional<Rational> t0)
{
    return square_route(f, Q, cfg, t0, false);
}

CycleIntegralResult cycle_integral_square_regularized(const QSeries& f, const QuadraticForm& Q,
                                                      const EvaluationConfig& cfg, std::optional<Rational> t0)
{
    return square_route(f, Q, cfg, t0, true);
}

const QSeries& cached_eisenstein_G(int weight, long N)
{
    static std::mutex mutex;
    static std::map<std::pair<int, long>, QSeries> cache;
    std::lock_guard lock(mutex);
    auto key = std::pair{weight, N};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, eisenstein_G(weight, N)).first;
    return it->second;
}

CycleIntegralResult eisenstein_cycle_square(int k, const QuadraticForm& Q, const EvaluationConfig& cfg,
                                            std::optional<Rational> t0)
{
    return square_route(cached_eisenstein_G(2 * k, cfg.truncation), Q, cfg, t0, true);
}

ComplexValue zeta_Q_neg(int k, const QuadraticForm& Q, const EvaluationConfig& cfg)
{
    const QSeries& G = cached_eisenstein_G(2 * k, cfg.truncation);
    CycleIntegralResult C = is_square_discriminant(Q.discriminant()) ? eisenstein_cycle_square(k, Q, cfg)
                                                                     : cycle_integral_quadrature(G, Q, cfg);
    PrecisionScope scope(cfg.prec_bits + 32);
    return Complex(Real(k % 2 == 0 ? 2 : -2)) * C.value;
}

CycleIntegralResult cycle_integral(const QSeries& f, const QuadraticForm& Q, const EvaluationConfig& cfg)
{
    bool cusp = is_cuspidal(f);
    if (is_square_discriminant(Q.discriminant()))
        return cusp ? cycle_integral_square(f, Q, cfg) : cycle_integral_square_regularized(f, Q, cfg);
    CycleIntegralResult result = cycle_integral_quadrature(f, Q, cfg);
    if (cusp) {
        CycleIntegralResult check = cycle_integral_periods(f, Q, cfg);
        PrecisionScope scope(cfg.prec_bits + 32);
        double gap = to_double(abs(result.value.value - check.value.value));
        double scale = 1.0 + to_double(abs(result.value.value));
        if (gap > std::max(cfg.tol * scale, 10.0 * (result.value.error + check.value.error)))
            throw ToleranceNotMet("quadrature and period routes disagree on " + name(Q) + ": gap "
                                  + std::to_string(gap));
    }
    return result;
}

}  // namespace cyclelift
