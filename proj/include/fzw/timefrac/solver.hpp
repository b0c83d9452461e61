#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "fzw/core/fft.hpp"
#include "fzw/core/field.hpp"
#include "fzw/multipliers/fractional.hpp"

namespace fzw {

/// Zener constants of the time-fractional problem. Unlike ModelParams this
/// admits a = b, which makes the constitutive law trivial.
struct ZenerConstants {
    double alpha = 0.5;
    double a = 1.0;
    double b = 2.0;

    void validate() const {
        if (!(alpha >= 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in [0,1)");
        if (!(a > 0.0 && b >= a)) throw ParameterError("Zener constants need 0 < a <= b");
    }
};

/// History of one Fourier mode. Index 0 is t = 0.
struct ViscoModeState {
    double xi = 0;
    double dt = 0;
    std::vector<cplx> u_hist;
    std::vector<cplx> s_hist;
    std::shared_ptr<const std::vector<double>> gl_weights;
};

inline double predicted_speed(double a, double b) {
    require(a > 0 && b >= a, "predicted_speed needs 0 < a <= b");
    return std::sqrt(b / a);
}

namespace detail {

// sum_{k=1..n} w_k h[n-k]
inline cplx memory_sum(const std::vector<double>& w, const std::vector<cplx>& h, std::size_t n) {
    double re = 0, im = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        re += w[k] * h[n - k].real();
        im += w[k] * h[n - k].imag();
    }
    return {re, im};
}

} // namespace detail

/// Advance one mode: u'' = i xi sigma with sigma from the GL-discretized law
/// sigma + a D^alpha sigma = eps + b D^alpha eps, eps = i xi u, solved
/// implicitly at every step; u by leapfrog, v0 through a Taylor first step.
inline ViscoModeState solve_mode(double xi, cplx u0, cplx v0, const ZenerConstants& z, double dt,
                                 std::size_t n_steps, std::shared_ptr<const std::vector<double>> weights = nullptr) {
    z.validate();
    require(dt > 0, "time step must be positive");
    if (!weights) weights = std::make_shared<const std::vector<double>>(gl_weights(z.alpha, n_steps + 1));
    require(weights->size() >= n_steps + 1, "weight table shorter than the run");
    const auto& w = *weights;
    const double ha = z.alpha == 0.0 ? 1.0 : std::pow(dt, -z.alpha);
    const cplx ik(0.0, xi);
    ViscoModeState st{xi, dt, std::vector<cplx>(n_steps + 1), std::vector<cplx>(n_steps + 1), weights};
    std::vector<cplx> eps(n_steps + 1);
    auto& U = st.u_hist;
    auto& S = st.s_hist;
    auto stress = [&](std::size_t m) {
        eps[m] = ik * U[m];
        cplx rhs = eps[m] * (1.0 + z.b * ha);
        if (z.alpha != 0.0 && m > 0)
            rhs += ha * (z.b * detail::memory_sum(w, eps, m) - z.a * detail::memory_sum(w, S, m));
        S[m] = rhs / (1.0 + z.a * ha);
    };
    U[0] = u0;
    stress(0);
    if (n_steps >= 1) {
        U[1] = u0 + dt * v0 + 0.5 * dt * dt * ik * S[0];
        for (std::size_t m = 1; m < n_steps; ++m) {
            stress(m);
            U[m + 1] = 2.0 * U[m] - U[m - 1] + dt * dt * ik * S[m];
        }
        stress(n_steps);
    }
    return st;
}

/// Largest GL-discretized constitutive defect over the history, normalized by
/// max(|sigma|, |eps|, 1).
inline double constitutive_residual(const ViscoModeState& st, const ZenerConstants& z) {
    const std::size_t n = st.u_hist.size();
    if (n == 0 || st.s_hist.size() != n) return 0.0;
    const std::vector<double> w =
        st.gl_weights && st.gl_weights->size() >= n ? *st.gl_weights : gl_weights(z.alpha, n);
    const double ha = z.alpha == 0.0 ? 1.0 : std::pow(st.dt, -z.alpha);
    std::vector<cplx> eps(n);
    double scale = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
        eps[m] = cplx(0.0, st.xi) * st.u_hist[m];
        scale = std::max({scale, std::abs(eps[m]), std::abs(st.s_hist[m])});
    }
    double worst = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        cplx ds = st.s_hist[m], de = eps[m];
        if (z.alpha != 0.0) {
            ds += detail::memory_sum(w, st.s_hist, m);
            de += detail::memory_sum(w, eps, m);
            ds *= ha;
            de *= ha;
        }
        const cplx defect = st.s_hist[m] + z.a * ds - eps[m] - z.b * de;
        worst = std::max(worst, std::abs(defect));
    }
    return worst / scale;
}

struct TimeFracRun {
    Field field;
    std::vector<ViscoModeState> modes;  ///< FFT-native order; empty unless requested
};

/// Spectral-in-x solve of u_tt = L^alpha u_xx on [0, t_end] with n_steps steps.
/// Returns all n_steps + 1 slices.
inline TimeFracRun solve_time_fractional_full(const GridFunction& u0, const GridFunction& v0, const ZenerConstants& z,
                                              double t_end, std::size_t n_steps, bool keep_modes = false) {
    z.validate();
    if (!(u0.grid == v0.grid)) throw ParameterError("u0 and v0 live on different grids");
    require(n_steps >= 16, "time-fractional solver needs n_steps >= 16");
    require(t_end > 0 && std::isfinite(t_end), "t_end must be positive");
    const Grid1D& g = u0.grid;
    const std::size_t n = g.n();
    const double dt = t_end / static_cast<double>(n_steps);
    const auto xi = dual_frequencies(g);
    const auto U0 = fft::forward_copy(u0.values);
    const auto V0 = fft::forward_copy(v0.values);
    const bool real = u0.is_real() && v0.is_real();
    auto weights = std::make_shared<const std::vector<double>>(gl_weights(z.alpha, n_steps + 1));

    TimeFracRun run{Field(g, uniform_times(0.0, t_end, n_steps + 1)), {}};
    if (keep_modes) run.modes.resize(n);
    // Real data have a Hermitian spectrum, so mode -k is the conjugate of mode k.
    const std::size_t last = real ? n / 2 : n - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        auto st = solve_mode(xi[k], U0[k], V0[k], z, dt, n_steps, weights);
        for (std::size_t m = 0; m <= n_steps; ++m) run.field.at(m, k) = st.u_hist[m];
        const std::size_t kc = (n - k) % n;
        if (real && kc != k) {
            for (std::size_t m = 0; m <= n_steps; ++m) run.field.at(m, kc) = std::conj(st.u_hist[m]);
            if (keep_modes) {
                ViscoModeState c{xi[kc], dt, st.u_hist, st.s_hist, weights};
                for (auto& v : c.u_hist) v = std::conj(v);
                for (auto& v : c.s_hist) v = std::conj(v);
                run.modes[kc] = std::move(c);
            }
        }
        if (keep_modes) run.modes[k] = std::move(st);
    }

    double ref = 0.0;
    for (std::size_t k = 0; k < n; ++k) ref += std::norm(U0[k]) + std::norm(t_end * V0[k]);
    ref = std::sqrt(ref);
    double peak = 0.0;
    for (std::size_t m = 0; m <= n_steps; ++m) {
        auto r = run.field.row(m);
        double s = 0.0;
        for (auto v : r) s += std::norm(v);
        if (!std::isfinite(s)) {
            peak = INFINITY;
            break;
        }
        peak = std::max(peak, std::sqrt(s));
    }
    if (ref > 0 && !(peak <= 1e3 * ref))
        throw StabilityError("time-fractional run grew by more than 1e3; use a smaller time step (CFL c*dt/dx < 2/pi)");
    for (std::size_t m = 0; m <= n_steps; ++m) {
        auto r = run.field.row(m);
        fft::inverse(r);
    }
    run.field.metadata["solver"] = "time_fractional";
    run.field.metadata["params"] = {{"alpha", z.alpha}, {"a", z.a}, {"b", z.b}};
    run.field.metadata["n_steps"] = n_steps;
    run.field.set_real_tag(real);
    return run;
}

inline Field solve_time_fractional(const GridFunction& u0, const GridFunction& v0, const ZenerConstants& z,
                                   double t_end, std::size_t n_steps) {
    return solve_time_fractional_full(u0, v0, z, t_end, n_steps).field;
}

} // namespace fzw
