#pragma once

// Genus-character traces of cycle integrals, the Shintani lift, and the
// verification suites built on them.

#include "cyclelift/cycleint.hpp"

#include "json.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace cyclelift {

struct TraceResult {
    ComplexValue value;
    std::set<Route> routes;
};

/// sum over classes Q of discriminant |delta| m of omega_delta(Q) C(f; Q).
TraceResult trace(const QSeries& f, int k, long delta, long m, const EvaluationConfig& cfg);

struct LiftSeries {
    int k = 0;
    long delta = 1;
    long m_max = 0;
    std::map<long, TraceResult> coefficients;  // admissible m only
};

LiftSeries shintani_lift(const QSeries& f, int k, long delta, long m_max, const EvaluationConfig& cfg);

struct VerificationCase {
    nlohmann::json parameters;
    Complex lhs;
    Complex rhs;
    double abs_gap = 0.0;
    double rel_gap = 0.0;
    double error = 0.0;
    double tolerance = 0.0;
    bool relative = false;
    bool pass = false;
    std::set<Route> routes;
};

struct VerificationReport {
    std::string identity;
    nlohmann::json parameters;
    std::vector<VerificationCase> cases;

    bool pass() const;
    /// The case with the largest gap relative to its tolerance.
    const VerificationCase* worst() const;
};

/// gap < max(tol, 10 * error), with the gap relative when `relative`.
VerificationCase compare(nlohmann::json parameters, const Complex& lhs, const Complex& rhs, double error,
                         double tol, bool relative, std::set<Route> routes);

nlohmann::json to_json(const VerificationCase& c, const std::string& identity);
nlohmann::json to_json(const VerificationReport& r);

/// sum over classes of zeta_Q(1-k) against zeta(1-k) H(k, D).
VerificationReport verify_siegel(int k, long D, const EvaluationConfig& cfg, double tol = 1e-6);

/// Lift of G_{2k} with delta = 1 against (1/2) zeta(1-k) H(k, m).
VerificationReport verify_eisenstein_lift(int k, long m_max, const EvaluationConfig& cfg,
                                          double tol_nonsquare = 1e-6, double tol_square = 1e-5);

/// |C(bol(f_{2-2k,m}, k); Q)| by quadrature over every class of each D.
VerificationReport verify_corollary(int k, const std::vector<long>& ms, const std::vector<long>& Ds,
                                    const EvaluationConfig& cfg, double tol = 1e-6);

/// Lift coefficients of the S^!_{2k} echelon elements q^{-m} + O(q).
VerificationReport verify_lift_vanishing(int k, const std::vector<long>& ms, const std::vector<long>& deltas,
                                         long m_max, const EvaluationConfig& cfg, double tol = 1e-6);

/// Quadrature against periods over every class of each D.
VerificationReport verify_two_route(const QSeries& f, const std::string& label, const std::vector<long>& Ds,
                                    const EvaluationConfig& cfg, double tol = 1e-6);

/// i^{1-n} r_n = (-1)^{n+1} i^{1-(2k-2-n)} r_{2k-2-n}.
VerificationReport verify_period_symmetry(const QSeries& f, const std::string& label, const EvaluationConfig& cfg,
                                          double tol = 1e-8);

/// L*(f, zeta_c^d, s) at several t0 against the first.
VerificationReport verify_t0_independence(const QSeries& f, const std::string& label, long c, long d,
                                          const std::vector<Rational>& t0s, const EvaluationConfig& cfg,
                                          double tol = 1e-8);

/// Cycle integrals from two base points (non-square D) or two splitting
/// points t0 (square D).
VerificationReport verify_z0_independence(const QSeries& f, const std::string& label, const std::vector<long>& Ds,
                                          const EvaluationConfig& cfg, double tol = 1e-8);

/// |g(-1/z) - z^w g(z)| at pseudo-random points with Im z in [0.8, 1.2].
VerificationReport verify_modularity(const QSeries& g, const std::string& label, int points, unsigned seed,
                                     const EvaluationConfig& cfg, double tol = 1e-8);

/// Reduced forms of D found by brute force against the union of the cycles.
VerificationReport verify_class_enumeration(long D_max);

}  // namespace cyclelift
