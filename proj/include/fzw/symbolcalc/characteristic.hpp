#pragma once

#include <cmath>

#include "fzw/symbolcalc/symbols.hpp"

namespace fzw {

enum class CharOperator { YB, P_timefrac };

/// Relative-tolerance membership in the characteristic set.
/// YB: tau = 0. P_timefrac: tau^2 = (b/a) xi^2 or tau = 0.
inline bool char_set_membership(CharOperator op, double xi, double tau, const ModelParams& p, double tol = 1e-6) {
    if (xi == 0.0 && tau == 0.0) throw ParameterError("characteristic membership is undefined at the origin");
    const bool on_axis = std::abs(tau) <= tol * std::abs(xi);
    if (op == CharOperator::YB) return on_axis;
    const double r2 = xi * xi + tau * tau;
    return on_axis || std::abs(tau * tau - p.b() / p.a() * xi * xi) <= tol * r2;
}

namespace detail {

// A xi-axis cutoff that equals 1 on the ray through (xi0, tau0) at radius R.
inline CutoffSpec ray_cutoff(double xi0, double tau0, double R) {
    const double psi = std::atan2(std::abs(tau0), std::abs(xi0));
    require(psi > 0, "ray lies on the xi-axis, inside every cutoff cone");
    return {CutoffAxis::xi_axis, 0.25 * R, 0.5 * R, 0.25 * std::min(psi, pi / 2 - 1e-3),
            0.5 * std::min(psi, pi / 2 - 1e-3)};
}

} // namespace detail

/// |p(lambda xi0, lambda tau0)| / lambda^2 with a cutoff that is 1 on the ray.
inline double scaled_symbol_magnitude(double lambda, double xi0, double tau0, const ModelParams& p) {
    require(lambda > 0, "lambda must be positive");
    require(xi0 != 0.0 || tau0 != 0.0, "ray direction must be nonzero");
    const double R = lambda * std::hypot(xi0, tau0);
    SymbolSpec s{SymbolKind::p, p, detail::ray_cutoff(xi0, tau0, R), 2.0, 1.0, 0.0};
    return std::abs(symbol_eval(s, lambda * xi0, lambda * tau0)) / (lambda * lambda);
}

/// d(lambda) xi0^2 on the characteristic cone tau0^2 = (b/a) xi0^2.
inline double char_ratio_d(double lambda, double xi0, double tau0, const ModelParams& p) {
    const double r2 = xi0 * xi0 + tau0 * tau0;
    if (r2 == 0.0 || std::abs(tau0 * tau0 - p.b() / p.a() * xi0 * xi0) > 1e-9 * r2)
        throw ParameterError("char_ratio_d needs a point on tau^2 = (b/a) xi^2");
    return scaled_symbol_magnitude(lambda, xi0, tau0, p);
}

} // namespace fzw
