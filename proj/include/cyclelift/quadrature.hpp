#pragma once

// Gauss-Legendre rules at the working precision.

#include "cyclelift/numeric.hpp"

#include <memory>
#include <vector>

namespace cyclelift {

struct GaussLegendreRule {
    std::vector<Real> nodes;    // in (-1, 1)
    std::vector<Real> weights;
};

/// Rule of the given degree at the current precision; cached per
/// (degree, precision) and safe to call from several threads.
std::shared_ptr<const GaussLegendreRule> gauss_legendre(int degree);

}  // namespace cyclelift
