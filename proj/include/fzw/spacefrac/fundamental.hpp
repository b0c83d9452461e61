#pragma once

#include <cmath>
#include <complex>

#include "fzw/core/params.hpp"
#include "fzw/core/grid.hpp"

namespace fzw {

enum class FundamentalKind { E0, E1, Etilde };

/// omega(xi) = b_beta |xi|^sigma.
inline double dispersion(double xi, const ModelParams& p) {
    if (xi == 0.0) return 0.0;
    return p.b_beta() * std::pow(std::abs(xi), p.sigma());
}

/// cos(omega t). Templated on the time type so that complex-step
/// differentiation in t is possible.
template <class T>
T e0_hat(double xi, T t, const ModelParams& p) {
    using std::cos;
    return cos(dispersion(xi, p) * t);
}

/// sin(omega t)/omega, with the removable value t at omega = 0.
template <class T>
T e1_hat(double xi, T t, const ModelParams& p) {
    using std::sin;
    const double w = dispersion(xi, p);
    if (w == 0.0) return t;
    return sin(w * t) / w;
}

inline cplx etilde_hat(double xi, double t, const ModelParams& p) { return std::polar(1.0, dispersion(xi, p) * t); }

inline cplx fundamental_hat(FundamentalKind kind, double xi, double t, const ModelParams& p) {
    switch (kind) {
        case FundamentalKind::E0: return e0_hat(xi, t, p);
        case FundamentalKind::E1: return e1_hat(xi, t, p);
        case FundamentalKind::Etilde: return etilde_hat(xi, t, p);
    }
    return 0.0;
}

} // namespace fzw
