#include "doctest.h"

#include "cyclelift/cycleint.hpp"
#include "cyclelift/errors.hpp"

#include <random>

using namespace cyclelift;

namespace {

QuadraticForm F(long a, long b, long c) { return {BigInt(a), BigInt(b), BigInt(c)}; }

double dist(const Complex& a, const Complex& b) { return to_double(abs(a - b)); }

EvaluationConfig config(long N = 200)
{
    EvaluationConfig cfg;
    cfg.truncation = N;
    return cfg;
}

Matrix2 random_sl2(std::mt19937_64& rng)
{
    std::uniform_int_distribution<long> u(-3, 3);
    Matrix2 M;
    for (int i = 0; i < 5; ++i) {
        M = M * Matrix2{BigInt(1), BigInt(u(rng)), BigInt(0), BigInt(1)};
        M = M * Matrix2{BigInt(0), BigInt(-1), BigInt(1), BigInt(0)};
    }
    return M;
}

}  // namespace

TEST_CASE("G4 over the golden form")
{
    auto cfg = config();
    PrecisionScope scope(cfg.prec_bits);
    auto r = cycle_integral_quadrature(eisenstein_G(4, 200), F(1, 3, 1), cfg);
    CHECK(dist(r.value.value, Complex(Real(1) / 60)) < 1e-20);
    CHECK(r.route == Route::quadrature);
    auto z = zeta_Q_neg(2, F(1, 3, 1), cfg);
    CHECK(dist(z.value, Complex(Real(1) / 30)) < 1e-20);
}

TEST_CASE("zero form")
{
    auto cfg = config();
    PrecisionScope scope(cfg.prec_bits);
    QSeries zero = QSeries::zero(200, 4);
    CHECK(dist(cycle_integral(zero, F(1, 3, 1), cfg).value.value, Complex(0)) < 1e-30);
    CHECK(dist(cycle_integral(zero, F(0, 2, 1), cfg).value.value, Complex(0)) < 1e-30);
}

TEST_CASE("Delta over the golden form by both routes")
{
    auto cfg = config();
    PrecisionScope scope(cfg.prec_bits);
    QSeries d = delta(200);
    // Independent high-precision quadrature along the geodesic.
    Complex expected(Real("-0.1853855232474032647251606936"), Real(0));
    auto q = cycle_integral_quadrature(d, F(1, 3, 1), cfg);
    auto p = cycle_integral_periods(d, F(1, 3, 1), cfg);
    CHECK(dist(q.value.value, expected) < 1e-20);
    CHECK(dist(p.value.value, expected) < 1e-20);
    CHECK(p.route == Route::periods);
    auto a = cycle_integral(d, F(1, 3, 1), cfg);
    CHECK(dist(a.value.value, expected) < 1e-20);
}

TEST_CASE("two routes agree over several classes")
{
    auto cfg = config();
    PrecisionScope scope(cfg.prec_bits);
    for (const QSeries& f : {delta(200), cusp_basis(12, 1, 200), cusp_basis(16, -1, 200)}) {
        int k = *f.weight() / 2;
        for (long D : {5, 8, 12, 13, 21}) {
            for (const auto& Q : class_representatives(D)) {
                auto q = cycle_integral_quadrature(f, Q, cfg);
                auto p = cycle_integral_periods(f, Q, cfg);
                double scale = 1 + to_double(abs(p.value.value));
                CAPTURE(k);
                CAPTURE(Q);
                CHECK(dist(q.value.value, p.value.value) < 1e-12 * scale);
                CHECK(abs(q.value.value.im) < Real(1e-8) * scale);
            }
        }
    }
}

TEST_CASE("cycle integrals are class invariants")
{
    auto cfg = config();
    PrecisionScope scope(cfg.prec_bits);
    std::mt19937_64 rng(23);
    QSeries d = delta(200);
    QSeries g = eisenstein_G(6, 200);
    for (long D : {5, 8, 13, 17}) {
        for (const auto& Q : class_representatives(D)) {
            auto ref = cycle_integral(d, Q, cfg).value.value;
            auto refg = cycle_integral(g, Q, cfg).value.value;
            for (int i = 0; i < 5; ++i) {
                QuadraticForm P = compose(Q, random_sl2(rng));
                CHECK(dist(cycle_integral(d, P, cfg).value.value, ref) < 1e-15);
                CHECK(dist(cycle_integral(g, P, cfg).value.value, refg) < 1e-15);
            }
        }
    }
    for (const auto& Q : class_representatives(9)) {
        auto ref = cycle_integral(d, Q, cfg).value.value;
        for (int i = 0; i < 3; ++i)
            CHECK(dist(cycle_integral(d, compose(Q, random_sl2(rng)), cfg).value.value, ref) < 1e-15);
    }
}

TEST_CASE("cycle integrals of Bol images vanish")
{
    auto cfg = config();
    PrecisionScope scope(cfg.prec_bits);
    for (int k : {2, 3}) {
        QSeries b = bol(weakly_basis(2 - 2 * k, 1, 200), k);
        for (const QuadraticForm& Q : {F(1, 3, 1), F(2, 6, 3), F(-3, 7, 2), F(5, 11, 3)}) {
            auto r = cycle_integral_quadrature(b, Q, cfg);
            CHECK(to_double(abs(r.value.value)) < 1e-7);
        }
    }
}

TEST_CASE("square discriminants")
{
    auto cfg = config(400);
    PrecisionScope scope(cfg.prec_bits);
    auto tw = square_twist(F(0, 3, 1));
    CHECK(tw.s == 3);
    CHECK(tw.c == 3);
    CHECK(tw.d == 2);
    tw = square_twist(F(0, 2, 0));
    CHECK(tw.c == 1);
    CHECK(tw.d == 0);

    QSeries d = delta(400);
    for (long D : {1, 4, 9, 16}) {
        for (const auto& Q : class_representatives(D)) {
            auto a = cycle_integral_square(d, Q, cfg);
            auto b = cycle_integral_square(d, Q, cfg, make_rational(13, 10 * square_twist(Q).c));
            CHECK(dist(a.value.value, b.value.value) < 1e-9);
            CHECK(a.route == Route::lstar);
        }
    }
    CHECK_THROWS_AS(cycle_integral_square(d, F(1, 3, 1), cfg), NonSquareDiscriminant);
    CHECK_THROWS_AS(cycle_integral_periods(d, F(0, 2, 1), cfg), SquareDiscriminant);
    CHECK_THROWS_AS(cycle_integral_square(eisenstein_G(4, 400), F(0, 2, 1), cfg), ConstantTermPresent);

    // Siegel's formula for D = 4: the two classes sum to zeta(-1) H(2, 4) = 7/144.
    Complex sum(0);
    for (const auto& Q : class_representatives(4)) sum += zeta_Q_neg(2, Q, cfg).value;
    CHECK(dist(sum, Complex(Real(7) / 144)) < 1e-15);

    // The constant term enters linearly.
    auto Q = F(0, 3, 1);
    QSeries g = eisenstein_G(4, 400);
    QSeries c = QSeries::constant(eisenstein_G(4, 400).constant_term(), 400, 4);
    auto base = cycle_integral_square_regularized(g, Q, cfg).value.value;
    auto once = cycle_integral_square_regularized(g + c, Q, cfg).value.value;
    auto twice = cycle_integral_square_regularized(g + Rational(2) * c, Q, cfg).value.value;
    CHECK(dist(twice - base, Real(2) * (once - base)) < 1e-15);
    CHECK(dist(eisenstein_cycle_square(2, Q, cfg).value.value,
               eisenstein_cycle_square(2, Q, cfg, make_rational(1, 2)).value.value)
          < 1e-9);
}
