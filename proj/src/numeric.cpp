#include "cyclelift/numeric.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace cyclelift {

namespace {

unsigned bits_to_digits10(unsigned bits) { return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1; }

double rounding_unit() { return std::ldexp(1.0, -static_cast<int>(current_precision_bits()) + 2); }

double magnitude(const Complex& z) { return to_double(abs(z)); }

}  // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision())
{
    Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

unsigned current_precision_bits()
{
    return static_cast<unsigned>(std::floor(Real::default_precision() / 0.30102999566398120));
}

Real to_real(const Rational& q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real to_real(const BigInt& n)
{
    Real r;
    mpfr_set_z(r.backend().data(), n.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real pi_real()
{
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

double to_double(const Real& x) { return mpfr_get_d(x.backend().data(), MPFR_RNDN); }

Complex& Complex::operator+=(const Complex& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o)
{
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex operator*(const Complex& a, const Complex& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
Complex operator/(const Complex& a, const Complex& b)
{
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
Real abs(const Complex& z) { return boost::multiprecision::sqrt(norm(z)); }

Complex exp(const Complex& z)
{
    Real m = boost::multiprecision::exp(z.re);
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

Complex log(const Complex& z)
{
    return {boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re)};
}

Complex pow(const Complex& z, int n)
{
    if (n < 0) return Complex(1) / pow(z, -n);
    Complex result(1);
    Complex base = z;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

Complex i_pow(int n)
{
    switch (((n % 4) + 4) % 4) {
    case 0: return {Real(1), Real(0)};
    case 1: return {Real(0), Real(1)};
    case 2: return {Real(-1), Real(0)};
    default: return {Real(0), Real(-1)};
    }
}

Complex root_of_unity(long num, long den)
{
    long r = ((num % den) + den) % den;
    if (r == 0) return Complex(Real(1));
    Real angle = 2 * pi_real() * Real(r) / Real(den);
    return {boost::multiprecision::cos(angle), boost::multiprecision::sin(angle)};
}

std::string format(const Real& x, int digits)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits) << x;
    return os.str();
}

std::string format(const Complex& z, int digits)
{
    return "(" + format(z.re, digits) + ", " + format(z.im, digits) + ")";
}

std::ostream& operator<<(std::ostream& os, const Complex& z) { return os << format(z); }

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b)
{
    Complex v = a.value + b.value;
    return {v, a.error + b.error + magnitude(v) * rounding_unit()};
}

ComplexValue operator-(const ComplexValue& a, const ComplexValue& b)
{
    Complex v = a.value - b.value;
    return {v, a.error + b.error + magnitude(v) * rounding_unit()};
}

ComplexValue operator*(const ComplexValue& a, const ComplexValue& b)
{
    Complex v = a.value * b.value;
    double err = magnitude(a.value) * b.error + magnitude(b.value) * a.error + a.error * b.error
        + magnitude(v) * rounding_unit();
    return {v, err};
}

ComplexValue operator*(const Complex& c, const ComplexValue& a)
{
    Complex v = c * a.value;
    return {v, magnitude(c) * a.error + magnitude(v) * rounding_unit()};
}

}  // namespace cyclelift
