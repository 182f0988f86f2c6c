// Acceptance run: one PASS/FAIL line per criterion. Each case is checked
// directly against the criterion's tolerance, without the error allowance
// the library's own pass rule grants.

#include "cyclelift/errors.hpp"
#include "cyclelift/shintani.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace cyclelift;

namespace {

struct Tally {
    long cases = 0;
    long failures = 0;
    double worst = 0.0;  // largest gap / tolerance
    std::string worst_case;
    std::vector<std::string> notes;

    void add(const VerificationCase& c, const std::string& identity)
    {
        ++cases;
        double scale = to_double(abs(c.rhs));
        double gap = c.relative ? c.abs_gap / (scale > 1e-12 ? scale : 1.0) : c.abs_gap;
        double ratio = c.tolerance > 0 ? gap / c.tolerance : (gap > 0 ? INFINITY : 0.0);
        if (!(gap < c.tolerance)) {
            ++failures;
            if (notes.size() < 5) notes.push_back(identity + " " + c.parameters.dump() + " gap " + std::to_string(gap));
        }
        if (ratio >= worst) {
            worst = ratio;
            worst_case = identity + " " + c.parameters.dump();
        }
    }

    void add(const VerificationReport& r)
    {
        for (const auto& c : r.cases) add(c, r.identity);
    }

    void error(const std::string& what)
    {
        ++failures;
        if (notes.size() < 5) notes.push_back(what);
    }
};

int failed_criteria = 0;

void criterion(int number, const std::string& title, const std::function<void(Tally&)>& body)
{
    Tally t;
    auto start = std::chrono::steady_clock::now();
    try {
        body(t);
    } catch (const std::exception& e) {
        t.error(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = t.failures == 0 && t.cases > 0;
    if (!pass) ++failed_criteria;
    std::printf("[%s] criterion %d: %s | cases %ld, failures %ld, worst gap/tol %.3g (%s), %.1fs\n",
                pass ? "PASS" : "FAIL", number, title.c_str(), t.cases, t.failures, t.worst, t.worst_case.c_str(),
                secs);
    for (const auto& n : t.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
}

EvaluationConfig config(long N)
{
    EvaluationConfig cfg;
    cfg.truncation = N;
    return cfg;
}

}  // namespace

int main()
{
    criterion(1, "cycle polynomial symmetry q(0) = q(2k-2), non-square D <= 200, k = 2..8", [](Tally& t) {
        for (long D = 5; D <= 200; ++D) {
            if ((D % 4 != 0 && D % 4 != 1) || is_perfect_square(D)) continue;
            for (const auto& cyc : class_cycles(D)) {
                for (int k = 2; k <= 8; ++k) {
                    CyclePolynomial p = cycle_polynomial(k, cyc.forms.front());
                    BigInt sa = 0, sc = 0;
                    for (const auto& Q : cyc.forms) {
                        sa += int_pow(Q.a, static_cast<unsigned>(k - 1));
                        sc += int_pow(Q.c, static_cast<unsigned>(k - 1));
                    }
                    VerificationCase c;
                    c.parameters = {{"D", D}, {"k", k}, {"Q", to_json(cyc.forms.front())}};
                    c.lhs = Complex(to_real(p.coeffs.front()));
                    c.rhs = Complex(to_real(p.coeffs.back()));
                    bool exact = p.coeffs.front() == p.coeffs.back() && p.coeffs.front() == sc && p.coeffs.back() == sa;
                    c.abs_gap = exact ? 0.0 : 1.0;
                    c.tolerance = 0.5;
                    t.add(c, "cycle-polynomial");
                }
            }
        }
    });

    criterion(2, "Siegel: sum of zeta_Q(1-k) = zeta(1-k) H(k,D), k in {2,4}, D in {5,8,12,13,17}, rel 1e-6",
              [](Tally& t) {
                  auto cfg = config(200);
                  for (int k : {2, 4})
                      for (long D : {5, 8, 12, 13, 17}) t.add(verify_siegel(k, D, cfg, 1e-6));
              });

    criterion(3, "quadrature = periods for Delta and f_{12,1}, D in {5,8,12}, rel 1e-6", [](Tally& t) {
        auto cfg = config(200);
        t.add(verify_two_route(delta(200), "Delta", {5, 8, 12}, cfg, 1e-6));
        t.add(verify_two_route(cusp_basis(12, 1, 200), "f_{12,1}", {5, 8, 12}, cfg, 1e-6));
    });

    criterion(4, "C(bol(f_{2-2k,m}); Q) = 0, k = 2,3,4, m = 1,2, D in {5,8,13}, abs 1e-6", [](Tally& t) {
        auto cfg = config(200);
        for (int k : {2, 3, 4}) t.add(verify_corollary(k, {1, 2}, {5, 8, 13}, cfg, 1e-6));
    });

    criterion(5, "lift of G_{2k} = (1/2) zeta(1-k) H_k, k in {2,4}, m <= 24, 1e-6 (square m 1e-5)", [](Tally& t) {
        auto cfg = config(200);
        for (int k : {2, 4}) t.add(verify_eisenstein_lift(k, 24, cfg, 1e-6, 1e-5));
    });

    criterion(6, "lift of q^{-m} + O(q) in S^!_{2k} vanishes, k = 2..5, m = 1,2, m' <= 20, N = 1000, 1e-6",
              [](Tally& t) {
                  auto cfg = config(1000);
                  for (int k = 2; k <= 5; ++k) {
                      std::vector<long> deltas = k % 2 == 0 ? std::vector<long>{1, 5} : std::vector<long>{-3, -4};
                      t.add(verify_lift_vanishing(k, {1, 2}, deltas, 20, cfg, 1e-6));
                  }
              });

    criterion(7, "period symmetry, t0 and z0 independence, modularity (1e-8), class enumeration D <= 100",
              [](Tally& t) {
                  auto cfg = config(200);
                  QSeries d = delta(200);
                  QSeries f12 = cusp_basis(12, 1, 200);
                  QSeries f12b = cusp_basis(12, 2, 200);
                  t.add(verify_period_symmetry(d, "Delta", cfg, 1e-8));
                  t.add(verify_period_symmetry(f12, "f_{12,1}", cfg, 1e-8));
                  t.add(verify_period_symmetry(f12b, "f_{12,2}", cfg, 1e-8));
                  t.add(verify_period_symmetry(bol(weakly_basis(-2, 1, 200), 2), "bol(f_{-2,1},2)", cfg, 1e-8));
                  t.add(verify_period_symmetry(bol(weakly_basis(-4, 1, 200), 3), "bol(f_{-4,1},3)", cfg, 1e-8));

                  // t0 = 2 against c = 7 puts the dual line at Im = 1/98.
                  auto cfg1200 = config(1200);
                  std::vector<Rational> t0s{make_rational(1, 2), make_rational(1), make_rational(2)};
                  t.add(verify_t0_independence(delta(1200), "Delta", 5, 2, t0s, cfg1200, 1e-8));
                  // Coefficients of f_{12,1} grow like exp(4 pi sqrt n), so it is checked untwisted,
                  // where both lines stay at Im >= 1/2.
                  t.add(verify_t0_independence(f12, "f_{12,1}", 1, 0, t0s, cfg, 1e-8));
                  t.add(verify_t0_independence(delta(1200), "Delta", 7, 3, t0s, cfg1200, 1e-8));

                  auto cfg400 = config(400);

                  t.add(verify_z0_independence(d, "Delta", {5, 8, 12, 13, 4, 9}, cfg400, 1e-8));
                  t.add(verify_z0_independence(eisenstein_G(4, 400), "G4", {5, 8, 12, 13, 4, 9}, cfg400, 1e-8));
                  t.add(verify_z0_independence(f12, "f_{12,1}", {5, 8, 13}, cfg, 1e-8));

                  unsigned seed = 1;
                  for (const auto& [label, g] :
                       std::vector<std::pair<std::string, QSeries>>{{"G4", eisenstein_G(4, 200)},
                                                                    {"G6", eisenstein_G(6, 200)},
                                                                    {"E4", eisenstein_E(4, 200)},
                                                                    {"Delta", d},
                                                                    {"j", j_function(200)},
                                                                    {"f_{-2,1}", weakly_basis(-2, 1, 200)},
                                                                    {"f_{0,2}", weakly_basis(0, 2, 200)},
                                                                    {"f_{12,1}", f12},
                                                                    {"S_{4,1}", cusp_basis(4, 1, 200)},
                                                                    {"bol(f_{-2,1},2)", bol(weakly_basis(-2, 1, 200), 2)}})
                      t.add(verify_modularity(g, label, 20, seed++, cfg, 1e-8));

                  VerificationReport classes = verify_class_enumeration(100);
                  for (const auto& c : classes.cases) {
                      VerificationCase strict = c;
                      strict.tolerance = 0.5;
                      t.add(strict, classes.identity);
                  }
              });

    std::printf("%s: %d of 7 criteria failed\n", failed_criteria ? "FAIL" : "PASS", failed_criteria);
    return failed_criteria ? 1 : 0;
}
