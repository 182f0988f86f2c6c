#include "cyclelift/shintani.hpp"

#include "cyclelift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cyclelift {

namespace {

bool is_cuspidal(const QSeries& f) { return f.is_zero() || f.valuation() > 0 || f.coefficient(0) == 0; }

nlohmann::json complex_json(const Complex& z) { return {{"re", to_double(z.re)}, {"im", to_double(z.im)}}; }

nlohmann::json routes_json(const std::set<Route>& routes)
{
    nlohmann::json out = nlohmann::json::array();
    for (Route r : routes) out.push_back(to_string(r));
    return out;
}

Complex rational_complex(const Rational& q) { return Complex(to_real(q)); }

}  // namespace

TraceResult trace(const QSeries& f, int k, long delta, long m, const EvaluationConfig& cfg)
{
    if (!HalfIntegralSeries::admissible(k, m) || m == 0)
        throw InvalidIndex("m = " + std::to_string(m) + " is not admissible for k = " + std::to_string(k));
    FundamentalDiscriminant d(delta);
    if ((k % 2 == 0) != (delta > 0))
        throw InvalidDiscriminant("(-1)^k delta must be positive, got k = " + std::to_string(k)
                                  + ", delta = " + std::to_string(delta));
    if (f.weight() && *f.weight() != 2 * k)
        throw WeightMismatch("trace of weight " + std::to_string(*f.weight()) + " with k = " + std::to_string(k));

    TraceResult out;
    if (f.is_zero()) return out;
    QSeries g = f.with_weight(2 * k);
    long D = std::abs(delta) * m;
    bool square = is_perfect_square(D);
    for (const auto& Q : class_representatives(D)) {
        int chi = genus_char(d, Q);
        if (chi == 0) continue;
        CycleIntegralResult C = cycle_integral(g, Q, cfg);
        out.value = out.value + Complex(Real(chi)) * C.value;
        out.routes.insert(C.route);
        if (!square && is_cuspidal(g)) out.routes.insert(Route::periods);
    }
    return out;
}

LiftSeries shintani_lift(const QSeries& f, int k, long delta, long m_max, const EvaluationConfig& cfg)
{
    LiftSeries lift{k, delta, m_max, {}};
    for (long m = 1; m <= m_max; ++m)
        if (HalfIntegralSeries::admissible(k, m)) lift.coefficients.emplace(m, trace(f, k, delta, m, cfg));
    return lift;
}

bool VerificationReport::pass() const
{
    return std::all_of(cases.begin(), cases.end(), [](const VerificationCase& c) { return c.pass; });
}

const VerificationCase* VerificationReport::worst() const
{
    const VerificationCase* w = nullptr;
    double score = -1.0;
    for (const auto& c : cases) {
        double s = (c.relative ? c.rel_gap : c.abs_gap) / c.tolerance;
        if (!(s <= score)) {
            score = s;
            w = &c;
        }
    }
    return w;
}

VerificationCase compare(nlohmann::json parameters, const Complex& lhs, const Complex& rhs, double error,
                         double tol, bool relative, std::set<Route> routes)
{
    VerificationCase c;
    c.parameters = std::move(parameters);
    c.lhs = lhs;
    c.rhs = rhs;
    c.abs_gap = to_double(abs(lhs - rhs));
    double scale = to_double(abs(rhs));
    c.rel_gap = scale > 0 ? c.abs_gap / scale : (c.abs_gap > 0 ? INFINITY : 0.0);
    c.error = error;
    c.tolerance = tol;
    c.relative = relative;
    // A vanishing reference value has no relative scale; fall back to 1.
    double gap = relative ? c.abs_gap / (scale > 1e-12 ? scale : 1.0) : c.abs_gap;
    c.pass = gap < std::max(tol, 10.0 * error);
    c.routes = std::move(routes);
    return c;
}

nlohmann::json to_json(const VerificationCase& c, const std::string& identity)
{
    return {{"identity", identity},   {"parameters", c.parameters}, {"lhs", complex_json(c.lhs)},
            {"rhs", complex_json(c.rhs)}, {"abs_gap", c.abs_gap},   {"rel_gap", c.rel_gap},
            {"error", c.error},         {"tolerance", c.tolerance}, {"pass", c.pass},
            {"routes", routes_json(c.routes)}};
}

nlohmann::json to_json(const VerificationReport& r)
{
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : r.cases) cases.push_back(to_json(c, r.identity));
    nlohmann::json out = {{"identity", r.identity}, {"parameters", r.parameters}, {"pass", r.pass()}};
    if (const VerificationCase* w = r.worst()) {
        out["lhs"] = complex_json(w->lhs);
        out["rhs"] = complex_json(w->rhs);
        out["abs_gap"] = w->abs_gap;
        out["rel_gap"] = w->rel_gap;
        out["routes"] = routes_json(w->routes);
    } else {
        out["lhs"] = nullptr;
        out["rhs"] = nullptr;
        out["abs_gap"] = 0.0;
        out["rel_gap"] = 0.0;
        out["routes"] = nlohmann::json::array();
    }
    out["cases"] = cases;
    return out;
}

VerificationReport verify_siegel(int k, long D, const EvaluationConfig& cfg, double tol)
{
    if (is_perfect_square(D)) throw SquareDiscriminant("Siegel's identity is checked for non-square D");
    VerificationReport report{"siegel", {{"k", k}, {"D", D}}, {}};
    PrecisionScope scope(cfg.prec_bits);
    ComplexValue lhs;
    for (const auto& Q : class_representatives(D)) lhs = lhs + zeta_Q_neg(k, Q, cfg);
    Rational rhs = zeta_neg(k) * cohen_H(k, D);
    report.cases.push_back(compare({{"k", k}, {"D", D}}, lhs.value, rational_complex(rhs), lhs.error, tol, true,
                                   {Route::quadrature}));
    return report;
}

VerificationReport verify_eisenstein_lift(int k, long m_max, const EvaluationConfig& cfg, double tol_nonsquare,
                                          double tol_square)
{
    if (k % 2 != 0) throw std::invalid_argument("the Eisenstein lift identity needs even k");
    VerificationReport report{"eisenstein-lift", {{"k", k}, {"m_max", m_max}}, {}};
    PrecisionScope scope(cfg.prec_bits);
    const QSeries& G = cached_eisenstein_G(2 * k, cfg.truncation);
    LiftSeries lift = shintani_lift(G, k, 1, m_max, cfg);
    for (const auto& [m, t] : lift.coefficients) {
        bool square = is_perfect_square(m);
        Rational rhs = Rational(1, 2) * zeta_neg(k) * cohen_H(k, m);
        report.cases.push_back(compare({{"k", k}, {"m", m}, {"square", square}}, t.value.value,
                                       rational_complex(rhs), t.value.error, square ? tol_square : tol_nonsquare,
                                       false, t.routes));
    }
    return report;
}

VerificationReport verify_corollary(int k, const std::vector<long>& ms, const std::vector<long>& Ds,
                                    const EvaluationConfig& cfg, double tol)
{
    VerificationReport report{"corollary", {{"k", k}, {"m", ms}, {"D", Ds}}, {}};
    PrecisionScope scope(cfg.prec_bits);
    for (long m : ms) {
        QSeries g = bol(weakly_basis(2 - 2 * k, m, cfg.truncation), k);
        for (long D : Ds) {
            for (const auto& Q : class_representatives(D)) {
                CycleIntegralResult C = is_perfect_square(D) ? cycle_integral_square(g, Q, cfg)
                                                             : cycle_integral_quadrature(g, Q, cfg);
                report.cases.push_back(compare({{"k", k}, {"m", m}, {"D", D}, {"Q", to_json(Q)}}, C.value.value,
                                               Complex(0), C.value.error, tol, false, {C.route}));
            }
        }
    }
    return report;
}

VerificationReport verify_lift_vanishing(int k, const std::vector<long>& ms, const std::vector<long>& deltas,
                                         long m_max, const EvaluationConfig& cfg, double tol)
{
    VerificationReport report{"lift-vanishing", {{"k", k}, {"m", ms}, {"delta", deltas}, {"m_max", m_max}}, {}};
    PrecisionScope scope(cfg.prec_bits);
    for (long m : ms) {
        QSeries f = cusp_basis(2 * k, m, cfg.truncation);
        for (long delta : deltas) {
            LiftSeries lift = shintani_lift(f, k, delta, m_max, cfg);
            for (const auto& [n, t] : lift.coefficients)
                report.cases.push_back(compare({{"k", k}, {"basis", m}, {"delta", delta}, {"m", n}}, t.value.value,
                                               Complex(0), t.value.error, tol, false, t.routes));
        }
    }
    return report;
}

VerificationReport verify_two_route(const QSeries& f, const std::string& label, const std::vector<long>& Ds,
                                    const EvaluationConfig& cfg, double tol)
{
    VerificationReport report{"two-route", {{"f", label}, {"D", Ds}}, {}};
    PrecisionScope scope(cfg.prec_bits);
    for (long D : Ds) {
        for (const auto& Q : class_representatives(D)) {
            CycleIntegralResult quad = cycle_integral_quadrature(f, Q, cfg);
            CycleIntegralResult per = cycle_integral_periods(f, Q, cfg);
            report.cases.push_back(compare({{"f", label}, {"D", D}, {"Q", to_json(Q)}}, quad.value.value,
                                           per.value.value, quad.value.error + per.value.error, tol, true,
                                           {Route::quadrature, Route::periods}));
        }
    }
    return report;
}

VerificationReport verify_period_symmetry(const QSeries& f, const std::string& label, const EvaluationConfig& cfg,
                                          double tol)
{
    VerificationReport report{"periods-symmetry", {{"f", label}}, {}};
    PrecisionScope scope(cfg.prec_bits);
    PeriodVector r = periods(f, cfg);
    int w = 2 * r.k - 2;
    for (int n = 0; n <= w; ++n) {
        const auto& a = r.values[static_cast<size_t>(n)];
        const auto& b = r.values[static_cast<size_t>(w - n)];
        Complex lhs = i_pow(1 - n) * a.value;
        Complex rhs = Complex(Real(n % 2 == 0 ? -1 : 1)) * i_pow(1 - (w - n)) * b.value;
        report.cases.push_back(compare({{"f", label}, {"n", n}}, lhs, rhs, a.error + b.error, tol, true, {}));
    }
    return report;
}

VerificationReport verify_t0_independence(const QSeries& f, const std::string& label, long c, long d,
                                          const std::vector<Rational>& t0s, const EvaluationConfig& cfg, double tol)
{
    nlohmann::json t0_names = nlohmann::json::array();
    for (const auto& t : t0s) t0_names.push_back(to_string(t));
    VerificationReport report{"t0-independence", {{"f", label}, {"c", c}, {"d", d}, {"t0", t0_names}}, {}};
    if (t0s.empty()) return report;
    PrecisionScope scope(cfg.prec_bits);
    int s = *f.weight() / 2;
    ComplexValue ref = lstar(f, c, d, t0s.front(), s, cfg);
    for (size_t i = 1; i < t0s.size(); ++i) {
        ComplexValue v = lstar(f, c, d, t0s[i], s, cfg);
        report.cases.push_back(compare({{"f", label}, {"t0", to_string(t0s[i])}, {"reference", to_string(t0s[0])}},
                                       v.value, ref.value, v.error + ref.error, tol, true, {Route::lstar}));
    }
    return report;
}

VerificationReport verify_z0_independence(const QSeries& f, const std::string& label, const std::vector<long>& Ds,
                                          const EvaluationConfig& cfg, double tol)
{
    VerificationReport report{"z0-independence", {{"f", label}, {"D", Ds}}, {}};
    PrecisionScope scope(cfg.prec_bits);
    bool cusp = is_cuspidal(f);
    for (long D : Ds) {
        for (const auto& Q : class_representatives(D)) {
            nlohmann::json params = {{"f", label}, {"D", D}, {"Q", to_json(Q)}};
            if (is_perfect_square(D)) {
                SquareTwist tw = square_twist(Q);
                Rational t1 = make_rational(1, tw.c), t2 = make_rational(13, 10 * tw.c);
                auto run = [&](const Rational& t) {
                    return cusp ? cycle_integral_square(f, Q, cfg, t) : cycle_integral_square_regularized(f, Q, cfg, t);
                };
                CycleIntegralResult a = run(t1), b = run(t2);
                report.cases.push_back(compare(params, b.value.value, a.value.value, a.value.error + b.value.error,
                                               tol, true, {a.route}));
            } else {
                ComplexValue a = cycle_integral_quadrature_at(f, Q, Complex(0.0, 1.0), cfg);
                ComplexValue b = cycle_integral_quadrature_at(f, Q, Complex(Real(1) / 4, Real(11) / 10), cfg);
                report.cases.push_back(
                    compare(params, b.value, a.value, a.error + b.error, tol, true, {Route::quadrature}));
            }
        }
    }
    return report;
}

VerificationReport verify_modularity(const QSeries& g, const std::string& label, int points, unsigned seed,
                                     const EvaluationConfig& cfg, double tol)
{
    VerificationReport report{"modularity", {{"f", label}, {"points", points}, {"seed", seed}}, {}};
    if (!g.weight()) throw WeightMismatch("modularity check needs a weight tag");
    int w = *g.weight();
    PrecisionScope scope(cfg.prec_bits);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> xs(-0.5, 0.5), ys(0.8, 1.2);
    for (int i = 0; i < points; ++i) {
        Complex z(xs(rng), ys(rng));
        Complex minus_inv = Complex(-1.0) / z;
        ComplexValue lhs = eval_qseries(g, minus_inv, g.truncation(), cfg);
        ComplexValue val = eval_qseries(g, z, g.truncation(), cfg);
        Complex zw = pow(z, w);
        ComplexValue rhs = zw * val;
        report.cases.push_back(compare({{"f", label}, {"z", complex_json(z)}}, lhs.value, rhs.value,
                                       lhs.error + rhs.error, tol, false, {}));
    }
    return report;
}

VerificationReport verify_class_enumeration(long D_max)
{
    VerificationReport report{"class-enumeration", {{"D_max", D_max}}, {}};
    for (long D = 5; D <= D_max; ++D) {
        if ((D % 4 != 0 && D % 4 != 1) || is_perfect_square(D)) continue;
        std::set<QuadraticForm> brute;
        for (long a = 1; a <= D; ++a)
            for (long c = 1; c <= D; ++c) {
                long b2 = D + 4 * a * c;
                long b = isqrt(b2);
                if (b * b == b2 && b > a + c) brute.insert({to_big(a), to_big(b), to_big(c)});
            }
        std::set<QuadraticForm> covered;
        size_t total = 0;
        auto cycles = class_cycles(D);
        for (const auto& cyc : cycles) {
            total += cyc.forms.size();
            covered.insert(cyc.forms.begin(), cyc.forms.end());
        }
        bool exact = covered == brute && total == covered.size();
        VerificationCase c;
        c.parameters = {{"D", D}, {"classes", cycles.size()}, {"reduced_forms", brute.size()}};
        c.lhs = Complex(static_cast<double>(brute.size()));
        c.rhs = Complex(static_cast<double>(total));
        c.abs_gap = exact ? 0.0 : 1.0;
        c.rel_gap = c.abs_gap;
        c.tolerance = 0.5;
        c.pass = exact;
        report.cases.push_back(std::move(c));
    }
    return report;
}

}  // namespace cyclelift
