#pragma once

#include <cmath>
#include <vector>

#include "fzw/core/fft.hpp"
#include "fzw/core/field.hpp"
#include "fzw/spacefrac/fundamental.hpp"

namespace fzw {

namespace detail {

inline void check_times_nonnegative(const std::vector<double>& times) {
    require(!times.empty(), "need at least one time value");
    for (double t : times) require(t >= 0.0 && std::isfinite(t), "times must be finite and >= 0");
}

inline nlohmann::json params_json(const ModelParams& p) {
    return {{"alpha", p.alpha()}, {"beta", p.beta()}, {"a", p.a()}, {"b", p.b()}};
}

} // namespace detail

/// u^(xi,t) = cos(omega t) u0^ + sin(omega t)/omega v0^ with omega = b_beta|xi|^sigma.
inline Field solve_space_fractional(const GridFunction& u0, const GridFunction& v0, const std::vector<double>& times,
                                    const ModelParams& p) {
    if (!(u0.grid == v0.grid)) throw ParameterError("u0 and v0 live on different grids");
    detail::check_times_nonnegative(times);
    const Grid1D& g = u0.grid;
    const auto xi = dual_frequencies(g);
    const auto U = fft::forward_copy(u0.values);
    const auto V = fft::forward_copy(v0.values);
    Field out(g, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        auto r = out.row(i);
        for (std::size_t k = 0; k < g.n(); ++k)
            r[k] = e0_hat(xi[k], times[i], p) * U[k] + e1_hat(xi[k], times[i], p) * V[k];
        fft::inverse(r);
    }
    out.metadata["solver"] = "space_fractional";
    out.metadata["params"] = detail::params_json(p);
    out.set_real_tag(u0.is_real() && v0.is_real());
    return out;
}

/// u~^(xi,t) = exp(i omega t) u0^, the solution of -D_t u~ + A^sigma u~ = 0.
inline Field half_wave_solve(const GridFunction& u0, const std::vector<double>& times, const ModelParams& p) {
    detail::check_times_nonnegative(times);
    const Grid1D& g = u0.grid;
    const auto xi = dual_frequencies(g);
    const auto U = fft::forward_copy(u0.values);
    Field out(g, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        auto r = out.row(i);
        if (times[i] == 0.0) {
            std::copy(u0.values.begin(), u0.values.end(), r.begin());
            continue;
        }
        for (std::size_t k = 0; k < g.n(); ++k) r[k] = etilde_hat(xi[k], times[i], p) * U[k];
        fft::inverse(r);
    }
    out.metadata["solver"] = "half_wave";
    out.metadata["params"] = detail::params_json(p);
    return out;
}

/// Relative L2 residual of u_tt - d_x E^beta u. u_tt uses the fourth-order
/// centered stencil on slices 2..nt-3; the spatial term is spectral. The
/// ratio is taken against the largest of the two terms and u itself, so that
/// data with both terms at round-off level give ~0 rather than 0/0.
inline double residual_space_fractional(const Field& u, const ModelParams& p) {
    require(u.nt() >= 5, "residual needs at least 5 time slices");
    for (double t : u.times) require(t > 0.0, "residual is defined on t > 0 slices only");
    const double dt = u.uniform_dt();
    const auto xi = dual_frequencies(u.grid);
    const std::size_t n = u.nx();
    // d_x E^beta has symbol i xi * i sin(beta pi/2) sgn(xi)|xi|^beta.
    const double s = p.beta() == 1.0 ? 1.0 : std::sin(p.beta() * pi / 2);
    std::vector<double> sym(n);
    for (std::size_t k = 0; k < n; ++k) sym[k] = -s * std::pow(std::abs(xi[k]), 1.0 + p.beta());

    std::vector<std::vector<cplx>> hat(u.nt());
    for (std::size_t i = 0; i < u.nt(); ++i) hat[i] = fft::forward_copy(u.row(i));

    double num = 0.0, dtt = 0.0, sp = 0.0, uu = 0.0;
    const double c = 1.0 / (12.0 * dt * dt);
    for (std::size_t i = 2; i + 2 < u.nt(); ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx utt = c * (-hat[i - 2][k] + 16.0 * hat[i - 1][k] - 30.0 * hat[i][k] + 16.0 * hat[i + 1][k] -
                                  hat[i + 2][k]);
            const cplx spatial = sym[k] * hat[i][k];
            num += std::norm(utt - spatial);
            dtt += std::norm(utt);
            sp += std::norm(spatial);
            uu += std::norm(hat[i][k]);
        }
    const double den = std::max({dtt, sp, uu});
    if (den == 0.0) return 0.0;
    return std::sqrt(num / den);
}

} // namespace fzw
