#pragma once

#include <cmath>
#include <vector>

#include "fzw/core/fft.hpp"
#include "fzw/core/field.hpp"

namespace fzw {

struct FrontOptions {
    double x_center = 0.0;        ///< only x > x_center is searched (right-moving front)
    double t_min_fraction = 0.25; ///< skip the first part of the run as transient
    double filter_cut = 0.5;      ///< low-pass cutoff as a fraction of Nyquist
    double smooth_gate = 0.04;    ///< slices whose indicator never reaches this are smooth
};

struct FrontSample {
    double t = 0, x = 0;
};

struct FrontSpeed {
    double speed_est = 0;
    double fit_residual = 0;
    std::vector<FrontSample> samples;
};

/// Non-smoothness indicator of one slice: |second difference|/dx of the
/// low-passed real part divided by the slice's largest slope. Kinks give O(1)
/// values, smooth profiles O(dx / width).
inline std::vector<double> kink_indicator(std::span<const cplx> row, const Grid1D& g, double filter_cut) {
    const std::size_t n = g.n();
    std::vector<cplx> spec(row.begin(), row.end());
    for (auto& v : spec) v = v.real();
    fft::forward(spec);
    const auto xi = dual_frequencies(g);
    const double cut = filter_cut * pi / g.spacing();
    for (std::size_t k = 0; k < n; ++k) spec[k] *= std::exp(-36.0 * std::pow(std::abs(xi[k]) / cut, 8));
    fft::inverse(spec);
    const double dx = g.spacing();
    double slope = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        slope = std::max(slope, std::abs(spec[(j + 1) % n].real() - spec[j].real()) / dx);
    std::vector<double> ind(n, 0.0);
    if (slope == 0.0) return ind;
    for (std::size_t j = 0; j < n; ++j) {
        const double d2 = spec[(j + 1) % n].real() - 2 * spec[j].real() + spec[(j + n - 1) % n].real();
        ind[j] = std::abs(d2) / dx / slope;
    }
    return ind;
}

/// Per slice, the outermost x > x_center where the indicator exceeds
/// indicator_threshold times its maximum over x > x_center; slices whose
/// maximum stays below smooth_gate carry no front. Front positions are fitted
/// linearly in t.
inline FrontSpeed front_speed(const Field& u, double indicator_threshold, const FrontOptions& opt = {}) {
    require(indicator_threshold > 0, "indicator threshold must be positive");
    require(opt.filter_cut > 0 && opt.filter_cut <= 1, "filter_cut must lie in (0,1]");
    const double t0 = u.times.front(), t1 = u.times.back();
    const double t_min = t0 + opt.t_min_fraction * (t1 - t0);
    std::size_t usable = 0;
    for (double t : u.times) usable += t >= t_min;
    require(usable >= 8, "front_speed needs at least 8 slices after the transient");
    FrontSpeed out;
    for (std::size_t i = 0; i < u.nt(); ++i) {
        if (u.times[i] < t_min) continue;
        const auto ind = kink_indicator(u.row(i), u.grid, opt.filter_cut);
        double peak = 0.0;
        for (std::size_t j = 0; j < u.nx(); ++j)
            if (u.grid.x(j) > opt.x_center) peak = std::max(peak, ind[j]);
        if (peak < opt.smooth_gate) continue;
        double xf = NAN;
        for (std::size_t j = 0; j < u.nx(); ++j)
            if (u.grid.x(j) > opt.x_center && ind[j] > indicator_threshold * peak) xf = u.grid.x(j);
        if (!std::isnan(xf)) out.samples.push_back({u.times[i], xf});
    }
    if (out.samples.size() < 8) throw NoFrontError("non-smoothness indicator never exceeds the threshold");
    const double n = static_cast<double>(out.samples.size());
    double st = 0, sx = 0, stt = 0, stx = 0;
    for (const auto& s : out.samples) {
        st += s.t;
        sx += s.x;
        stt += s.t * s.t;
        stx += s.t * s.x;
    }
    const double den = n * stt - st * st;
    out.speed_est = (n * stx - st * sx) / den;
    const double icpt = (sx - out.speed_est * st) / n;
    double r = 0;
    for (const auto& s : out.samples) r += std::pow(s.x - icpt - out.speed_est * s.t, 2);
    out.fit_residual = std::sqrt(r / n);
    return out;
}

} // namespace fzw
