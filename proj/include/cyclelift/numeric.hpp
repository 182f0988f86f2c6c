#pragma once

// Multiprecision real/complex scalars for the evaluation layer.

#include "cyclelift/exactmath.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <iosfwd>
#include <string>

namespace cyclelift {

using Real = boost::multiprecision::mpfr_float;

/// Sets the working precision (in bits) of newly created Reals for the
/// lifetime of the scope; restores the previous precision on exit.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

unsigned current_precision_bits();

Real to_real(const Rational& q);
Real to_real(const BigInt& n);
Real pi_real();
double to_double(const Real& x);

struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r, double i = 0.0) : re(r), im(i) {}

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Real& s, const Complex& a);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& s);

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
Complex exp(const Complex& z);
/// Principal logarithm, argument in (-pi, pi].
Complex log(const Complex& z);
Complex pow(const Complex& z, int n);
/// i^n, exact.
Complex i_pow(int n);
/// e^{2 pi i num/den}
Complex root_of_unity(long num, long den);

std::string format(const Real& x, int digits = 20);
std::string format(const Complex& z, int digits = 20);
std::ostream& operator<<(std::ostream& os, const Complex& z);

/// A complex number with a conservative absolute error estimate.
struct ComplexValue {
    Complex value;
    double error = 0.0;
};

ComplexValue operator+(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator-(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator*(const ComplexValue& a, const ComplexValue& b);
ComplexValue operator*(const Complex& c, const ComplexValue& a);

/// Precision, truncation and tolerance shared by every numeric routine.
struct EvaluationConfig {
    unsigned prec_bits = 96;
    long truncation = 200;
    int quad_degree = 64;
    double tol = 1e-8;
};

}  // namespace cyclelift
