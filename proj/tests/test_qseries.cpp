#include "doctest.h"

#include "cyclelift/errors.hpp"
#include "cyclelift/qseries.hpp"

#include <numeric>

using namespace cyclelift;

namespace {

Rational R(long n, long d = 1) { return make_rational(BigInt(n), BigInt(d)); }

QSeries poly(long first, std::vector<long> c, long N)
{
    std::vector<Rational> r;
    for (long x : c) r.push_back(R(x));
    return QSeries(first, std::move(r), N);
}

}  // namespace

TEST_CASE("series arithmetic")
{
    QSeries a = poly(0, {1, 1}, 10);
    QSeries b = poly(0, {1, -1}, 10);
    CHECK(a * b == poly(0, {1, 0, -1}, 10));
    QSeries inv = invert(b);
    for (long n = 0; n <= 10; ++n) CHECK(inv.coefficient(n) == 1);
    CHECK(inv * b == QSeries::constant(1, 10));
    CHECK(pow(a, 2) == poly(0, {1, 2, 1}, 10));
    CHECK(pow(a, -1) == invert(a));
    CHECK((a - a).is_zero());
    CHECK_THROWS_AS(invert(QSeries::zero(5)), NotInvertible);
}

TEST_CASE("truncation is enforced")
{
    QSeries a = poly(-1, {1, 2, 3}, 8);
    CHECK(a.coefficient(8) == 0);
    CHECK_THROWS_AS(a.coefficient(9), TruncationExceeded);
    CHECK_THROWS_AS(a.truncated(9), TruncationExceeded);
    CHECK((a + poly(0, {1}, 4)).truncation() == 4);
    CHECK(a.valuation() == -1);
    CHECK(QSeries::zero(5).valuation() == 6);
    CHECK_THROWS_AS(eisenstein_G(4, 10) + eisenstein_G(6, 10), WeightMismatch);
}

TEST_CASE("Eisenstein series")
{
    QSeries g4 = eisenstein_G(4, 50);
    CHECK(g4.coefficient(0) == R(1, 240));
    CHECK(g4.coefficient(1) == 1);
    CHECK(g4.coefficient(2) == 9);
    CHECK(g4.coefficient(3) == 28);
    CHECK(*g4.weight() == 4);
    CHECK(eisenstein_G(12, 5).coefficient(0) == R(691, 65520));
    for (long p : {2, 3, 5, 7, 11, 13}) CHECK(eisenstein_G(6, 13).coefficient(p) == 1 + p * p * p * p * p);
    // sigma is multiplicative on coprime arguments.
    QSeries g6 = eisenstein_G(6, 2500);
    for (long m = 1; m <= 50; ++m)
        for (long n = 1; n <= 50; ++n)
            if (std::gcd(m, n) == 1) CHECK(g6.coefficient(m * n) == g6.coefficient(m) * g6.coefficient(n));
    CHECK(eisenstein_E(4, 5).coefficient(1) == 240);
    CHECK(eisenstein_E(6, 5).coefficient(1) == -504);
    CHECK(eisenstein_E(14, 20) == (pow(eisenstein_E(4, 20), 2) * eisenstein_E(6, 20)).with_weight(14));
}

TEST_CASE("Delta and j")
{
    QSeries d = delta(60);
    CHECK(d.valuation() == 1);
    CHECK(d.coefficient(1) == 1);
    CHECK(d.coefficient(2) == -24);
    CHECK(d.coefficient(3) == 252);
    CHECK(d.coefficient(10) == -115920);
    QSeries e4 = eisenstein_E(4, 60), e6 = eisenstein_E(6, 60);
    CHECK(d == (R(1, 1728) * (pow(e4, 3) - pow(e6, 2))).with_weight(12));
    CHECK((d * invert(d)) == QSeries::constant(1, 59, 0));
    QSeries j = j_function(10);
    CHECK(j.valuation() == -1);
    CHECK(j.coefficient(-1) == 1);
    CHECK(j.coefficient(0) == 744);
    CHECK(j.coefficient(1) == 196884);
    CHECK(j.coefficient(2) == 21493760);
    CHECK(j.coefficient(3) == 864299970);
}

TEST_CASE("weakly holomorphic bases")
{
    CHECK(pivot_bound(12) == 1);
    CHECK(pivot_bound(2) == -1);
    CHECK(pivot_bound(-2) == -1);
    CHECK(pivot_bound(0) == 0);
    CHECK(pivot_bound(14) == 0);
    CHECK(pivot_bound(-12) == -1);

    QSeries j = j_function(30);
    CHECK(weakly_basis(0, 1, 30) == (j - QSeries::constant(744, 30, 0)).with_weight(0));
    CHECK(weakly_basis(-12, 1, 30) == invert(delta(32)).truncated(30).with_weight(-12));
    QSeries f = weakly_basis(-2, 1, 20);
    CHECK(f.coefficient(-1) == 1);
    CHECK(f.coefficient(0) == -240);
    CHECK(f.coefficient(1) == -141444);
    CHECK_THROWS_AS(weakly_basis(12, -2, 20), NoSuchBasisElement);
    CHECK(weakly_basis(12, -1, 20) == delta(20));

    for (int w : {-10, -6, -4, -2, 0, 2, 4, 8, 12, 14, 24}) {
        long ell = pivot_bound(w);
        for (long m = -ell; m <= -ell + 4; ++m) {
            QSeries g = weakly_basis(w, m, 25);
            CAPTURE(w);
            CAPTURE(m);
            CHECK(g.valuation() == -m);
            CHECK(g.coefficient(-m) == 1);
            for (long e = -m + 1; e <= ell; ++e) CHECK(g.coefficient(e) == 0);
        }
    }
}

TEST_CASE("cusp basis")
{
    QSeries s = cusp_basis(4, 1, 30);
    CHECK(s.coefficient(-1) == 1);
    CHECK(s.coefficient(0) == 0);
    CHECK(*s.weight() == 4);
    CHECK(cusp_basis(12, -1, 10) == delta(10));
    CHECK_THROWS_AS(cusp_basis(4, 0, 10), NoSuchBasisElement);
    CHECK(cusp_basis(2, 1, 10).coefficient(0) == 0);
}

TEST_CASE("Bol operator")
{
    QSeries f = weakly_basis(-2, 1, 10);
    QSeries b = bol(f, 2);
    CHECK(*b.weight() == 4);
    CHECK(b.coefficient(-1) == -1);
    CHECK(b.coefficient(0) == 0);
    CHECK(b.coefficient(1) == -141444);
    CHECK(b.coefficient(2) == 8 * f.coefficient(2));
    CHECK(bol(QSeries::zero(5, 0), 1).is_zero());
    CHECK_THROWS_AS(bol(f, 3), WeightMismatch);
    QSeries g = weakly_basis(-2, 2, 10);
    CHECK(bol(f + R(3) * g, 2) == bol(f, 2) + R(3) * bol(g, 2));
}

TEST_CASE("Cohen Eisenstein series")
{
    auto h = cohen_eisenstein(2, 30);
    CHECK(h.coefficient(0) == R(1, 120));
    CHECK(h.coefficient(5) == R(-2, 5));
    CHECK(h.coefficient(4) == R(-7, 12));
    CHECK(h.coefficient(2) == 0);
    CHECK(h.coefficient(3) == 0);
    CHECK_THROWS_AS(h.coefficient(31), TruncationExceeded);
    auto h3 = cohen_eisenstein(3, 10);
    CHECK(h3.coefficient(3) == R(-2, 9));
    CHECK(h3.coefficient(4) == R(-1, 2));
    CHECK(h3.coefficient(5) == 0);
    CHECK(HalfIntegralSeries::admissible(2, 8));
    CHECK_FALSE(HalfIntegralSeries::admissible(3, 5));
    CHECK_THROWS_AS(HalfIntegralSeries(2, {R(1), R(0), R(1)}), InvalidIndex);
}

TEST_CASE("JSON round trip")
{
    for (const QSeries& f : {delta(20), weakly_basis(-2, 2, 15), QSeries::zero(7, 4), j_function(12),
                             R(1, 3) * eisenstein_G(4, 9)}) {
        QSeries g = series_from_json(to_json(f));
        CHECK(g == f);
    }
    CHECK_THROWS_AS(series_from_json(nlohmann::json{{"coefficients", 1}}), ParseError);
}
