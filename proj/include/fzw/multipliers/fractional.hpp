#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "fzw/core/errors.hpp"

namespace fzw {

/// Riemann-Liouville kernel f_gamma(t) = t^{gamma-1}/Gamma(gamma) H(t), gamma > 0.
inline double rl_kernel_eval(double gamma, double t) {
    if (!(gamma > 0.0))
        throw ParameterError("rl_kernel_eval needs gamma > 0; nonpositive orders go through gl_frac_derivative");
    if (t <= 0.0) return (t == 0.0 && gamma == 1.0) ? 1.0 : 0.0;
    return std::exp((gamma - 1.0) * std::log(t) - std::lgamma(gamma));
}

/// Grunwald-Letnikov weights w_0 = 1, w_k = w_{k-1} (1 - (alpha+1)/k).
inline std::vector<double> gl_weights(double alpha, std::size_t count) {
    std::vector<double> w(count);
    if (count == 0) return w;
    w[0] = 1.0;
    for (std::size_t k = 1; k < count; ++k) w[k] = w[k - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(k));
    return w;
}

/// h^{-alpha} sum_{k=0..n} w_k g_{n-k} for every n, with g_0 at t = 0.
template <class T>
std::vector<T> gl_frac_derivative(std::span<const T> samples, double alpha, double h) {
    require(!samples.empty(), "gl_frac_derivative needs a nonempty series");
    require(h > 0.0, "step h must be positive");
    require(alpha >= 0.0 && alpha < 1.0, "alpha must lie in [0,1)");
    std::vector<T> out(samples.begin(), samples.end());
    if (alpha == 0.0) return out;
    const auto w = gl_weights(alpha, samples.size());
    const double s = std::pow(h, -alpha);
    for (std::size_t n = 0; n < samples.size(); ++n) {
        T acc{};
        for (std::size_t k = 0; k <= n; ++k) acc += w[k] * samples[n - k];
        out[n] = s * acc;
    }
    return out;
}

template <class T>
std::vector<T> gl_frac_derivative(const std::vector<T>& samples, double alpha, double h) {
    return gl_frac_derivative(std::span<const T>(samples), alpha, h);
}

} // namespace fzw
