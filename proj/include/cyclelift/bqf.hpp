#pragma once

// Integral binary quadratic forms of positive discriminant: reduction,
// reduction cycles, class representatives, Pell automorphs, genus characters
// and the cycle polynomials Q_{k,D,A}(X).

#include "cyclelift/exactmath.hpp"

#include "json.hpp"

#include <compare>
#include <iosfwd>
#include <vector>

namespace cyclelift {

/// [[a, b], [c, d]] acting by (x, y) -> (a x + b y, c x + d y).
struct Matrix2 {
    BigInt a = 1, b = 0, c = 0, d = 1;

    static Matrix2 identity() { return {}; }
    BigInt det() const { return a * d - b * c; }
    bool operator==(const Matrix2&) const = default;
};

Matrix2 operator*(const Matrix2& x, const Matrix2& y);

/// M_m = [[m, 1], [-1, 0]]
Matrix2 step_matrix(const BigInt& m);

/// a X^2 + b X Y + c Y^2
struct QuadraticForm {
    BigInt a, b, c;

    BigInt discriminant() const { return b * b - 4 * a * c; }
    BigInt operator()(const BigInt& x, const BigInt& y) const { return a * x * x + b * x * y + c * y * y; }

    bool operator==(const QuadraticForm&) const = default;
    std::strong_ordering operator<=>(const QuadraticForm& o) const;
};

std::ostream& operator<<(std::ostream& os, const QuadraticForm& Q);

/// (Q o M)(x, y) = Q(alpha x + beta y, gamma x + delta y).
QuadraticForm compose(const QuadraticForm& Q, const Matrix2& M);

/// a > 0, c > 0 and b > a + c.
bool is_reduced(const QuadraticForm& Q);

struct ReductionCycle {
    std::vector<QuadraticForm> forms;  // Q_0 .. Q_{r-1}
    std::vector<BigInt> steps;         // m_1 .. m_r, Q_j = Q_{j-1} o M_{m_j}
};

/// The full cycle through a reduced form of non-square discriminant.
ReductionCycle cycle(const QuadraticForm& Q);

struct Reduction {
    QuadraticForm form;  // == compose(input, transform)
    Matrix2 transform;
};

/// Non-square D: an equivalent reduced form. Square D: the representative
/// [0, sqrt(D), c] with 0 <= c < sqrt(D).
Reduction reduce(const QuadraticForm& Q);

/// Every reduced form of discriminant D (non-square), sorted.
std::vector<QuadraticForm> reduced_forms(long long D);

/// One reduced cycle per SL2(Z)-class of non-square discriminant D.
std::vector<ReductionCycle> class_cycles(long long D);

/// One form per class: the smallest reduced form of each cycle, or the
/// forms [0, sqrt(D), c] for square D.
std::vector<QuadraticForm> class_representatives(long long D);

struct PellSolution {
    BigInt t, u;
    bool operator==(const PellSolution&) const = default;
};

/// Smallest t, u > 0 with t^2 - D u^2 = 4.
PellSolution pell(const BigInt& D);

/// g_Q = [[(t+bu)/2, cu], [-au, (t-bu)/2]]; identity for square discriminant.
Matrix2 automorph(const QuadraticForm& Q);

/// omega_{D1}(Q); requires D1 | disc(Q) with disc(Q)/D1 = 0,1 mod 4.
int genus_char(const FundamentalDiscriminant& D1, const QuadraticForm& Q);

struct CyclePolynomial {
    int k = 0;
    BigInt D;
    std::vector<BigInt> coeffs;  // coefficient of X^n at index n, n <= 2k-2
};

/// sum over the reduced forms of the class of Q(X, -1)^{k-1}; for square D
/// the single representative's Q(X, -1)^{k-1}.
CyclePolynomial cycle_polynomial(int k, const QuadraticForm& Q);

bool is_square_discriminant(const BigInt& D);

nlohmann::json to_json(const QuadraticForm& Q);
nlohmann::json to_json(const ReductionCycle& cyc);
nlohmann::json to_json(const Matrix2& M);

}  // namespace cyclelift
