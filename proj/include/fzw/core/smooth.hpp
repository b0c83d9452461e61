#pragma once

#include <cmath>

namespace fzw {

/// C-infinity step: 0 for u <= 0, 1 for u >= 1, built from exp(-1/u).
inline double smooth_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double e = 1.0 / u - 1.0 / (1.0 - u);
    if (e > 700.0) return 0.0;
    if (e < -700.0) return 1.0;
    return 1.0 / (1.0 + std::exp(e));
}

inline double smooth_step_derivative(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double e = 1.0 / u - 1.0 / (1.0 - u);
    if (std::abs(e) > 700.0) return 0.0;
    const double E = std::exp(e);
    const double s = 1.0 / (1.0 + E);
    return E * s * s * (1.0 / (u * u) + 1.0 / ((1.0 - u) * (1.0 - u)));
}

/// Smooth radial switch: 0 for r <= lo, 1 for r >= hi.
inline double smooth_switch(double r, double lo, double hi) { return smooth_step((r - lo) / (hi - lo)); }

} // namespace fzw
