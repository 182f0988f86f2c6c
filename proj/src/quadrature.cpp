#include "cyclelift/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace cyclelift {

namespace {

GaussLegendreRule build_rule(int n)
{
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<size_t>(n));
    rule.weights.resize(static_cast<size_t>(n));
    Real pi = pi_real();
    Real eps = boost::multiprecision::ldexp(Real(1), -static_cast<int>(current_precision_bits()) + 4);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real x = boost::multiprecision::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real dp;
        for (int iter = 0; iter < 100; ++iter) {
            Real p0 = 1, p1 = x;
            for (int j = 2; j <= n; ++j) {
                Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = std::move(p1);
                p1 = std::move(p2);
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (boost::multiprecision::abs(dx) < eps) {
                if (iter > 0) break;
            }
        }
        Real p0 = 1, p1 = x;
        for (int j = 2; j <= n; ++j) {
            Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
            p0 = std::move(p1);
            p1 = std::move(p2);
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        Real w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[static_cast<size_t>(i)] = -x;
        rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<size_t>(i)] = w;
        rule.weights[static_cast<size_t>(n - 1 - i)] = w;
    }
    return rule;
}

}  // namespace

std::shared_ptr<const GaussLegendreRule> gauss_legendre(int degree)
{
    if (degree < 2) throw std::invalid_argument("Gauss-Legendre degree must be at least 2");
    static std::mutex mutex;
    static std::map<std::pair<int, unsigned>, std::shared_ptr<const GaussLegendreRule>> cache;
    auto key = std::pair{degree, current_precision_bits()};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto rule = std::make_shared<const GaussLegendreRule>(build_rule(degree));
    std::lock_guard lock(mutex);
    return cache.emplace(key, rule).first->second;
}

}  // namespace cyclelift
