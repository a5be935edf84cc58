#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "gdd/distribution.hpp"

namespace gdd::testing {

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Parameter grid (alpha1, beta1, alpha2, beta2) shared by unit and acceptance tests.
inline const std::array<GddParams, 5> kGrid{
    GddParams{1, 1, 1, 1},        GddParams{2, 1, 1, 1}, GddParams{2, 1.5, 0.7, 2.2},
    GddParams{0.6, 1, 0.7, 2},    GddParams{5, 2, 3, 0.5},
};

}  // namespace gdd::testing
