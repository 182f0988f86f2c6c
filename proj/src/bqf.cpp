#include "cyclelift/bqf.hpp"

#include "cyclelift/errors.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>

namespace cyclelift {

namespace {

BigInt big_isqrt(const BigInt& n)
{
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

unsigned long bit_length(const QuadraticForm& Q)
{
    size_t bits = 1;
    for (const BigInt* x : {&Q.a, &Q.b, &Q.c}) bits = std::max(bits, mpz_sizeinbase(x->get_mpz_t(), 2));
    return bits;
}

void require_positive_discriminant(const BigInt& D)
{
    if (D <= 0) throw InvalidDiscriminant("discriminant " + D.get_str() + " is not positive");
}

void require_discriminant(long long D)
{
    long long r = ((D % 4) + 4) % 4;
    if (D <= 0 || r == 2 || r == 3)
        throw InvalidDiscriminant(std::to_string(D) + " is not a positive discriminant (0 or 1 mod 4)");
}

// floor((b + sqrt(D)) / (2a)) + 1 for non-square D and a != 0.
BigInt zagier_step(const QuadraticForm& Q, const BigInt& root)
{
    if (Q.a > 0) return floor_div(Q.b + root, 2 * Q.a) + 1;
    return -floor_div(Q.b + root, -2 * Q.a);
}

// Gauss reduced: 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
bool gauss_reduced(const QuadraticForm& Q, const BigInt& root)
{
    BigInt twice_a = 2 * big_abs(Q.a);
    return Q.b > 0 && Q.b <= root && twice_a >= root - Q.b + 1 && twice_a <= root + Q.b;
}

Reduction reduce_nonsquare(const QuadraticForm& Q, const BigInt& D)
{
    BigInt root = big_isqrt(D);
    unsigned long cap = 10 * bit_length(Q) + 16;
    Reduction r{Q, Matrix2::identity()};

    for (unsigned long step = 0; !gauss_reduced(r.form, root); ++step) {
        if (step > cap) throw Error("reduction of " + D.get_str() + " form did not reach the Gauss window");
        const BigInt& c = r.form.c;
        BigInt two_c = 2 * big_abs(c);
        BigInt lower = c * c > D ? BigInt(-big_abs(c) + 1) : BigInt(root - two_c + 1);
        // b' = -b mod 2|c| placed in [lower, lower + 2|c|).
        BigInt offset;
        BigInt target = -r.form.b - lower;
        mpz_fdiv_r(offset.get_mpz_t(), target.get_mpz_t(), two_c.get_mpz_t());
        BigInt b_new = lower + offset;
        BigInt t = (b_new + r.form.b) / (2 * c);
        Matrix2 M{0, -1, 1, t};
        r.form = compose(r.form, M);
        r.transform = r.transform * M;
    }

    unsigned long zagier_cap = 10 * bit_length(Q) + 4 * root.get_ui() + 64;
    for (unsigned long step = 0; !is_reduced(r.form); ++step) {
        if (step > zagier_cap) throw Error("reduction of " + D.get_str() + " form exceeded the step cap");
        Matrix2 M = step_matrix(zagier_step(r.form, root));
        r.form = compose(r.form, M);
        r.transform = r.transform * M;
    }
    return r;
}

Reduction reduce_square(const QuadraticForm& Q, const BigInt& s)
{
    std::vector<std::pair<BigInt, BigInt>> roots;
    if (Q.a == 0) {
        roots.emplace_back(1, 0);
        roots.emplace_back(-Q.c, Q.b);
    } else {
        roots.emplace_back(-Q.b + s, 2 * Q.a);
        roots.emplace_back(-Q.b - s, 2 * Q.a);
    }
    for (auto [p, q] : roots) {
        BigInt g = gcd(p, q);
        if (g == 0) continue;
        p /= g;
        q /= g;
        BigInt one, u, v;
        mpz_gcdext(one.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        Matrix2 G{p, -v, q, u};
        QuadraticForm R = compose(Q, G);
        if (R.a != 0 || R.b != s) continue;
        BigInt t = -floor_div(R.c, s);
        Matrix2 T{1, t, 0, 1};
        return {compose(R, T), G * T};
    }
    throw Error("no rational root found for square-discriminant form");
}

}  // namespace

Matrix2 operator*(const Matrix2& x, const Matrix2& y)
{
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Matrix2 step_matrix(const BigInt& m) { return {m, 1, -1, 0}; }

std::strong_ordering QuadraticForm::operator<=>(const QuadraticForm& o) const
{
    for (auto [x, y] : {std::pair{&a, &o.a}, std::pair{&b, &o.b}, std::pair{&c, &o.c}}) {
        int s = cmp(*x, *y);
        if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const QuadraticForm& Q)
{
    return os << "[" << Q.a << "," << Q.b << "," << Q.c << "]";
}

QuadraticForm compose(const QuadraticForm& Q, const Matrix2& M)
{
    return {Q(M.a, M.c), 2 * Q.a * M.a * M.b + Q.b * (M.a * M.d + M.b * M.c) + 2 * Q.c * M.c * M.d, Q(M.b, M.d)};
}

bool is_reduced(const QuadraticForm& Q) { return Q.a > 0 && Q.c > 0 && Q.b > Q.a + Q.c; }

bool is_square_discriminant(const BigInt& D) { return D >= 0 && mpz_perfect_square_p(D.get_mpz_t()); }

ReductionCycle cycle(const QuadraticForm& Q)
{
    BigInt D = Q.discriminant();
    require_positive_discriminant(D);
    if (is_square_discriminant(D)) throw SquareDiscriminant("cycle of a form of square discriminant " + D.get_str());
    std::ostringstream name;
    name << Q;
    if (!is_reduced(Q)) throw NotReduced(name.str());

    BigInt root = big_isqrt(D);
    ReductionCycle cyc;
    QuadraticForm cur = Q;
    do {
        if (cyc.forms.size() > 4 * D.get_ui() + 16) throw Error("cycle of " + name.str() + " did not close");
        BigInt m = zagier_step(cur, root);
        cyc.forms.push_back(cur);
        cyc.steps.push_back(m);
        cur = compose(cur, step_matrix(m));
        if (!is_reduced(cur)) throw Error("reduction cycle left the reduced window at " + name.str());
    } while (cur != Q);
    return cyc;
}

Reduction reduce(const QuadraticForm& Q)
{
    BigInt D = Q.discriminant();
    require_positive_discriminant(D);
    if (is_square_discriminant(D)) return reduce_square(Q, big_isqrt(D));
    return reduce_nonsquare(Q, D);
}

std::vector<QuadraticForm> reduced_forms(long long D)
{
    require_discriminant(D);
    if (is_perfect_square(D)) throw SquareDiscriminant("reduced forms of square discriminant " + std::to_string(D));
    std::vector<QuadraticForm> out;
    long long root = isqrt(D);
    for (long long b = root + 1; b <= D; ++b) {
        if ((b - D) % 2 != 0) continue;
        long long ac = (b * b - D) / 4;
        for (long long a : divisors(ac)) {
            long long c = ac / a;
            if (b > a + c) out.push_back({to_big(a), to_big(b), to_big(c)});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ReductionCycle> class_cycles(long long D)
{
    std::vector<ReductionCycle> out;
    std::set<QuadraticForm> seen;
    for (const auto& Q : reduced_forms(D)) {
        if (seen.contains(Q)) continue;
        ReductionCycle cyc = cycle(Q);
        seen.insert(cyc.forms.begin(), cyc.forms.end());
        out.push_back(std::move(cyc));
    }
    return out;
}

std::vector<QuadraticForm> class_representatives(long long D)
{
    require_discriminant(D);
    std::vector<QuadraticForm> out;
    if (is_perfect_square(D)) {
        long long s = isqrt(D);
        for (long long c = 0; c < s; ++c) out.push_back({0, to_big(s), to_big(c)});
        return out;
    }
    for (const auto& cyc : class_cycles(D)) out.push_back(cyc.forms.front());
    return out;
}

PellSolution pell(const BigInt& D)
{
    require_positive_discriminant(D);
    BigInt r4 = D % 4;
    if (r4 != 0 && r4 != 1) throw InvalidDiscriminant(D.get_str() + " is not 0 or 1 mod 4");
    if (is_square_discriminant(D)) throw SquareDiscriminant("Pell equation for square " + D.get_str());

    // The principal form [1, b, (b^2 - D)/4] with b the least integer above
    // sqrt(D) of the parity of D is reduced; its cycle product generates the
    // stabilizer of a primitive form.
    BigInt b = big_isqrt(D) + 1;
    if ((b - D) % 2 != 0) b += 1;
    QuadraticForm principal{1, b, (b * b - D) / 4};
    Matrix2 P = Matrix2::identity();
    for (const auto& m : cycle(principal).steps) P = P * step_matrix(m);
    return {big_abs(P.a + P.d), big_abs(P.c)};
}

Matrix2 automorph(const QuadraticForm& Q)
{
    BigInt D = Q.discriminant();
    require_positive_discriminant(D);
    if (is_square_discriminant(D)) return Matrix2::identity();
    auto [t, u] = pell(D);
    return {(t + Q.b * u) / 2, Q.c * u, -Q.a * u, (t - Q.b * u) / 2};
}

int genus_char(const FundamentalDiscriminant& D1, const QuadraticForm& Q)
{
    BigInt D = Q.discriminant();
    BigInt d1 = to_big(D1.value());
    if (D % d1 != 0) throw InvalidDiscriminant(d1.get_str() + " does not divide " + D.get_str());
    BigInt r4 = (D / d1) % 4;
    if (r4 < 0) r4 += 4;
    if (r4 != 0 && r4 != 1)
        throw InvalidDiscriminant(D.get_str() + "/" + d1.get_str() + " is not a discriminant");

    BigInt g = gcd(gcd(Q.a, Q.b), gcd(Q.c, d1));
    if (g > 1) return 0;

    BigInt bound = big_abs(d1) * (big_abs(Q.a) + big_abs(Q.b) + big_abs(Q.c));
    // Shells of growing sup-norm around the origin; small representations
    // are found quickly, the bound only limits the failure case.
    long long limit = bound.fits_slong_p() ? bound.get_si() : (1LL << 40);
    for (int attempt = 0; attempt < 4; ++attempt, limit *= 2) {
        for (long long s = 1; s <= limit; ++s) {
            for (long long x = -s; x <= s; ++x) {
                for (long long y : {-s, s}) {
                    for (auto [X, Y] : {std::pair{x, y}, std::pair{y, x}}) {
                        BigInt r = Q(to_big(X), to_big(Y));
                        if (r != 0 && gcd(r, d1) == 1) return kronecker(d1, r);
                    }
                }
            }
        }
    }
    std::ostringstream name;
    name << Q;
    throw RepresentativeNotFound("no value of " + name.str() + " coprime to " + d1.get_str());
}

CyclePolynomial cycle_polynomial(int k, const QuadraticForm& Q)
{
    if (k < 2) throw std::invalid_argument("cycle_polynomial needs k >= 2");
    BigInt D = Q.discriminant();
    require_positive_discriminant(D);
    CyclePolynomial poly{k, D, std::vector<BigInt>(static_cast<size_t>(2 * k - 1), BigInt(0))};

    auto accumulate = [&](const QuadraticForm& F) {
        // F(X, -1) = a X^2 - b X + c raised to the power k - 1.
        std::vector<BigInt> base{F.c, -F.b, F.a};
        std::vector<BigInt> acc{1};
        for (int e = 0; e < k - 1; ++e) {
            std::vector<BigInt> next(acc.size() + 2, BigInt(0));
            for (size_t i = 0; i < acc.size(); ++i)
                for (size_t j = 0; j < 3; ++j) next[i + j] += acc[i] * base[j];
            acc = std::move(next);
        }
        for (size_t n = 0; n < acc.size(); ++n) poly.coeffs[n] += acc[n];
    };

    Reduction red = reduce(Q);
    if (is_square_discriminant(D)) {
        accumulate(red.form);
        return poly;
    }
    for (const auto& F : cycle(red.form).forms) accumulate(F);
    if (poly.coeffs.front() != poly.coeffs.back())
        throw Error("cycle polynomial symmetry q(0) = q(2k-2) violated for D = " + D.get_str());
    return poly;
}

nlohmann::json to_json(const QuadraticForm& Q)
{
    return {{"a", Q.a.get_str()}, {"b", Q.b.get_str()}, {"c", Q.c.get_str()}, {"D", Q.discriminant().get_str()}};
}

nlohmann::json to_json(const ReductionCycle& cyc)
{
    nlohmann::json forms = nlohmann::json::array();
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& F : cyc.forms) forms.push_back(to_json(F));
    for (const auto& m : cyc.steps) steps.push_back(m.get_str());
    return {{"forms", forms}, {"steps", steps}};
}

nlohmann::json to_json(const Matrix2& M)
{
    return nlohmann::json::array({nlohmann::json::array({M.a.get_str(), M.b.get_str()}),
                                  nlohmann::json::array({M.c.get_str(), M.d.get_str()})});
}

}  // namespace cyclelift
