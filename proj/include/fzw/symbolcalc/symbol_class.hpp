#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "fzw/symbolcalc/symbols.hpp"

namespace fzw {

/// Sample points for symbol estimates. Frequency symbols use dyadic shells
/// r_min..r_max with `angles` directions offset from the axes; symbols with a
/// base variable use xi = +-2^e and t on a uniform grid in (0, t_max].
struct SymbolRegion {
    double r_min = 1.0;
    double r_max = 32768.0;
    int per_octave = 2;
    int angles = 512;
    double t_max = 2.0;

    void validate() const {
        require(r_min > 0 && r_max > r_min, "symbol region needs 0 < r_min < r_max");
        require(per_octave >= 1 && angles >= 4, "symbol region too coarse");
        require(t_max > 0, "symbol region needs t_max > 0");
    }

    /// Twice the density in radius and angle, one octave further out.
    SymbolRegion refined() const { return {r_min, r_max * 2, per_octave * 2, angles * 2, t_max}; }
};

struct DerivativeConstant {
    int k_freq = 0;    ///< derivatives in xi
    int k_second = 0;  ///< derivatives in tau (or t)
    double constant = 0;
    double constant_refined = 0;
    double drift = 0;
};

struct SymbolClassReport {
    std::vector<DerivativeConstant> constants;
    double max_drift = 0;
    bool pass = false;
};

namespace detail {

// Second-order central stencils on offsets -2..2 for derivative orders 0..4.
inline const std::array<std::array<double, 5>, 5>& central_stencils() {
    static const std::array<std::array<double, 5>, 5> s{{
        {0, 0, 1, 0, 0},
        {0, -0.5, 0, 0.5, 0},
        {0, 1, -2, 1, 0},
        {-0.5, 1, 0, -1, 0.5},
        {1, -4, 6, -4, 1},
    }};
    return s;
}

struct SamplePoint {
    double a, b;  // (xi, tau) or (xi, t)
};

inline std::vector<SamplePoint> region_points(const SymbolSpec& s, const SymbolRegion& r) {
    std::vector<SamplePoint> pts;
    const double lo = std::log2(r.r_min), hi = std::log2(r.r_max);
    const auto steps = static_cast<long>(std::llround((hi - lo) * r.per_octave));
    for (long k = 0; k <= steps; ++k) {
        const double R = std::exp2(lo + static_cast<double>(k) / r.per_octave);
        for (int j = 0; j < r.angles; ++j) {
            if (s.second_is_base()) {
                const double t = r.t_max * (j + 1) / r.angles;
                pts.push_back({R, t});
                pts.push_back({-R, t});
            } else {
                const double th = 2 * pi * (j + 0.5) / r.angles;
                pts.push_back({R * std::cos(th), R * std::sin(th)});
            }
        }
    }
    return pts;
}

// Distance to the set where the uncut symbol fails to be smooth.
inline double nonsmooth_distance(const SymbolSpec& s, const SamplePoint& pt) {
    if (s.cutoff) return std::numeric_limits<double>::infinity();
    switch (s.kind) {
        case SymbolKind::y: return std::abs(pt.a);
        case SymbolKind::z:
        case SymbolKind::p: return s.params.alpha() > 0 ? std::abs(pt.b) : std::numeric_limits<double>::infinity();
        default: return std::numeric_limits<double>::infinity();
    }
}

struct DerivativeTable {
    // d[kf][ks] for kf + ks <= max_order
    std::array<std::array<double, 5>, 5> d{};
};

inline DerivativeTable derivatives_at(const SymbolSpec& s, const SamplePoint& pt, int max_order) {
    const double R = s.second_is_base() ? std::abs(pt.a) : std::hypot(pt.a, pt.b);
    const double dist = nonsmooth_distance(s, pt);
    double h1 = 1e-3 * std::pow(1 + R, s.rho);
    double h2 = s.second_is_base() ? 1e-3 * std::pow(1 + R, -s.delta) : h1;
    h1 = std::min(h1, dist / 4);
    h2 = std::min(h2, dist / 4);
    if (s.second_is_base()) h2 = std::min(h2, pt.b / 4);  // stay at t > 0

    auto table_at = [&](double ha, double hb) {
        std::array<std::array<cplx, 5>, 5> f{};
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) f[i][j] = symbol_eval(s, pt.a + (i - 2) * ha, pt.b + (j - 2) * hb);
        std::array<std::array<cplx, 5>, 5> d{};
        const auto& st = central_stencils();
        for (int kf = 0; kf <= max_order; ++kf)
            for (int ks = 0; kf + ks <= max_order; ++ks) {
                cplx acc = 0;
                for (int i = 0; i < 5; ++i) {
                    if (st[kf][i] == 0) continue;
                    for (int j = 0; j < 5; ++j)
                        if (st[ks][j] != 0) acc += st[kf][i] * st[ks][j] * f[i][j];
                }
                d[kf][ks] = acc / (std::pow(ha, kf) * std::pow(hb, ks));
            }
        return d;
    };
    const auto coarse = table_at(h1, h2);
    const auto fine = table_at(h1 / 2, h2 / 2);
    DerivativeTable out;
    for (int kf = 0; kf <= max_order; ++kf)
        for (int ks = 0; kf + ks <= max_order; ++ks)
            out.d[kf][ks] = std::abs((4.0 * fine[kf][ks] - coarse[kf][ks]) / 3.0);
    return out;
}

inline std::array<std::array<double, 5>, 5> weighted_sups(const SymbolSpec& s, const SymbolRegion& r, int max_order,
                                                          bool& finite) {
    std::array<std::array<double, 5>, 5> sup{};
    for (const auto& pt : region_points(s, r)) {
        const double w = s.second_is_base() ? 1 + std::abs(pt.a) : 1 + std::abs(pt.a) + std::abs(pt.b);
        const auto t = derivatives_at(s, pt, max_order);
        for (int kf = 0; kf <= max_order; ++kf)
            for (int ks = 0; kf + ks <= max_order; ++ks) {
                const int kb = s.second_is_base() ? ks : 0;
                const int kfreq = s.second_is_base() ? kf : kf + ks;
                const double expo = s.order - s.rho * kfreq + s.delta * kb;
                const double v = t.d[kf][ks] / std::pow(w, expo);
                if (!std::isfinite(v)) finite = false;
                else sup[kf][ks] = std::max(sup[kf][ks], v);
            }
    }
    return sup;
}

} // namespace detail

/// Sampled symbol estimates sup |d^k s| / (1+|xi|+|tau|)^{m - rho k_freq + delta k_base}
/// for |k| <= max_order. Passes when every constant moves by at most 10% after
/// refining the region.
inline SymbolClassReport symbol_class_check(const SymbolSpec& s, int max_order, const SymbolRegion& region) {
    require(max_order >= 0 && max_order <= 4, "symbol_class_check supports derivative orders 0..4");
    region.validate();
    bool finite = true;
    const auto c = detail::weighted_sups(s, region, max_order, finite);
    const auto f = detail::weighted_sups(s, region.refined(), max_order, finite);
    double scale = 0;
    for (int kf = 0; kf <= max_order; ++kf)
        for (int ks = 0; kf + ks <= max_order; ++ks) scale = std::max({scale, c[kf][ks], f[kf][ks]});
    SymbolClassReport rep;
    for (int kf = 0; kf <= max_order; ++kf)
        for (int ks = 0; kf + ks <= max_order; ++ks) {
            DerivativeConstant dc{kf, ks, c[kf][ks], f[kf][ks], 0.0};
            const double m = std::max(dc.constant, dc.constant_refined);
            // Derivatives that vanish identically only carry rounding noise.
            if (m > 1e-9 * scale) dc.drift = std::abs(dc.constant_refined - dc.constant) / m;
            rep.max_drift = std::max(rep.max_drift, dc.drift);
            rep.constants.push_back(dc);
        }
    rep.pass = finite && rep.max_drift <= 0.1;
    return rep;
}

} // namespace fzw
