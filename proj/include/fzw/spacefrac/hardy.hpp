#pragma once

#include <cmath>
#include <vector>

#include "fzw/core/fft.hpp"
#include "fzw/core/field.hpp"
#include "fzw/core/smooth.hpp"

namespace fzw {

struct HardyConfig {
    double theta = 3.0;
    double sigma = 0.75;
    double eta_lo = 0.5;  ///< eta vanishes for |xi| <= eta_lo
    double eta_hi = 1.0;  ///< eta is one for |xi| >= eta_hi
    double fit_lo = 0.02;
    double fit_hi = 0.5;

    double threshold() const { return (1.0 - sigma / 2) / (1.0 - sigma); }
    double gamma_formula() const { return (theta * (1.0 - sigma) - 1.0 + sigma / 2) / (2.0 * sigma - 1.0); }
    double alpha_prime_formula() const { return sigma / (1.0 - sigma); }

    void validate() const {
        if (!(sigma > 0.5 && sigma < 1.0)) throw ValidityError("Hardy sigma must lie in (1/2, 1)");
        if (!(theta > threshold()))
            throw ValidityError("Hardy theta must exceed (1 - sigma/2)/(1 - sigma) = " + std::to_string(threshold()));
        require(0.0 <= eta_lo && eta_lo < eta_hi, "eta cutoff needs 0 <= eta_lo < eta_hi");
        require(0.0 < fit_lo && fit_lo < fit_hi, "fit window needs 0 < fit_lo < fit_hi");
    }
};

struct HardyFit {
    double gamma_est = 0;
    double alpha_prime_est = 0;
    double fit_residual = 0;
    std::size_t peaks = 0;
};

namespace detail {

// (1/2pi) int eta(xi)|xi|^{-theta} exp(i b |xi|^sigma) e^{i x xi} dxi sampled at
// origin + j*dx, j < count, using a periodic grid of spacing dx/2^level.
inline std::vector<cplx> hardy_samples(double theta, double sigma, double b, double eta_lo, double eta_hi,
                                       double origin, double dx, std::size_t count, int level) {
    const std::size_t stride = std::size_t{1} << level;
    const double h = dx / static_cast<double>(stride);
    const double period = std::max(4.0 * dx * static_cast<double>(count), 32.0);
    std::size_t n = 1;
    while (static_cast<double>(n) * h < period) n <<= 1;
    if (n > (std::size_t{1} << 24)) throw ResolutionError("Hardy profile needs more than 2^24 spectral samples");
    auto xi = fft_frequencies(n, static_cast<double>(n) * h);
    const double dk = 2.0 * pi / (static_cast<double>(n) * h);
    std::vector<cplx> spec(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(xi[k]);
        const double e = smooth_switch(a, eta_lo, eta_hi);
        if (e == 0.0) continue;
        spec[k] = e * std::pow(a, -theta) * std::polar(1.0, b * std::pow(a, sigma) + xi[k] * origin);
    }
    // sum_k c_k e^{2 pi i k j/n} = n * inverse.
    fft::inverse(spec);
    std::vector<cplx> out(count);
    const double scale = static_cast<double>(n) * dk / (2.0 * pi);
    for (std::size_t j = 0; j < count; ++j) out[j] = scale * spec[(j * stride) % n];
    return out;
}

inline GridFunction hardy_profile_unchecked(const HardyConfig& cfg, double phase_coef, const Grid1D& out,
                                            int max_level = 12) {
    std::vector<std::size_t> window;
    for (std::size_t j = 0; j < out.n(); ++j) {
        const double ax = std::abs(out.x(j));
        if (ax >= cfg.fit_lo && ax <= cfg.fit_hi) window.push_back(j);
    }
    auto prev = hardy_samples(cfg.theta, cfg.sigma, phase_coef, cfg.eta_lo, cfg.eta_hi, out.origin(), out.spacing(),
                              out.n(), 0);
    for (int level = 1; level <= max_level; ++level) {
        auto next = hardy_samples(cfg.theta, cfg.sigma, phase_coef, cfg.eta_lo, cfg.eta_hi, out.origin(),
                                  out.spacing(), out.n(), level);
        double diff = 0.0, mag = 0.0;
        for (auto j : window) {
            diff = std::max(diff, std::abs(next[j] - prev[j]));
            mag = std::max(mag, std::abs(next[j]));
        }
        if (diff <= 0.01 * mag) return GridFunction(out, std::move(next));
        prev = std::move(next);
    }
    throw ResolutionError("Hardy profile did not converge under spectral refinement");
}

inline double slope_fit(const std::vector<double>& x, const std::vector<double>& y, double* rms = nullptr) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw InsufficientDataError("degenerate least-squares fit");
    const double slope = (n * sxy - sx * sy) / den;
    const double icpt = (sy - slope * sx) / n;
    if (rms) {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += std::pow(y[i] - (icpt + slope * x[i]), 2);
        *rms = std::sqrt(s / n);
    }
    return slope;
}

} // namespace detail

/// Samples of Q_theta f = F^{-1}[eta |xi|^{-theta} exp(i b_beta |xi|^sigma)] on
/// out_grid. The spectral range is doubled until the fit-window samples move
/// by less than 1% of their maximum.
inline GridFunction hardy_profile(const HardyConfig& cfg, const ModelParams& p, const Grid1D& out_grid) {
    cfg.validate();
    if (std::abs(cfg.sigma - p.sigma()) > 1e-12)
        throw ParameterError("Hardy sigma does not match (1 + beta)/2 of the model parameters");
    return detail::hardy_profile_unchecked(cfg, p.b_beta(), out_grid);
}

/// Exponent fit on x in [fit_lo, fit_hi]. The envelope is read off the local
/// maxima of |Re Q f|; the spacing of successive maxima gives the chirp
/// exponent through spacing ~ x^{alpha'+1}.
inline HardyFit hardy_exponent_fit(const GridFunction& profile, const HardyConfig& cfg) {
    require(0.0 < cfg.fit_lo && cfg.fit_lo < cfg.fit_hi, "fit window needs 0 < fit_lo < fit_hi");
    const auto& g = profile.grid;
    std::vector<double> px, pa;
    for (std::size_t j = 1; j + 1 < g.n(); ++j) {
        const double x = g.x(j);
        if (x < cfg.fit_lo || x > cfg.fit_hi) continue;
        const double a = std::abs(profile.values[j].real());
        if (a > std::abs(profile.values[j - 1].real()) && a >= std::abs(profile.values[j + 1].real()) && a > 0) {
            px.push_back(x);
            pa.push_back(a);
        }
    }
    if (px.size() < 6)
        throw InsufficientDataError("only " + std::to_string(px.size()) + " envelope peaks in the fit window");
    HardyFit fit;
    fit.peaks = px.size();
    std::vector<double> lx(px.size()), la(px.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
        lx[i] = std::log(px[i]);
        la[i] = std::log(pa[i]);
    }
    fit.gamma_est = -detail::slope_fit(lx, la, &fit.fit_residual);
    std::vector<double> mx, ls;
    for (std::size_t i = 0; i + 1 < px.size(); ++i) {
        mx.push_back(std::log(0.5 * (px[i] + px[i + 1])));
        ls.push_back(std::log(px[i + 1] - px[i]));
    }
    fit.alpha_prime_est = detail::slope_fit(mx, ls) - 1.0;
    return fit;
}

} // namespace fzw
