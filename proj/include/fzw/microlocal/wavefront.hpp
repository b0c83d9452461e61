#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "fzw/core/field.hpp"
#include "fzw/core/io.hpp"

namespace fzw {

/// Settings of the windowed-Fourier wavefront detector.
struct WFProbe {
    double window_width = 6.0;        ///< Gaussian std-dev in grid units (x and t)
    std::vector<double> radii;        ///< frequency radii, ascending
    std::vector<double> directions;   ///< angles of (xi, tau) over [0, 2pi)
    double smooth_exponent_threshold = 6.0;
    double floor = 1e-7;              ///< amplitude floor relative to window L1 mass times sup|u|
    std::size_t tail = 5;             ///< radii used in the decay fit (largest ones)

    /// 13 radii over three octaves just below the coarser Nyquist frequency
    /// and 72 directions around the circle.
    static WFProbe standard(double dx, double dt, double window_width = 6.0) {
        WFProbe p;
        p.window_width = window_width;
        const double nyq = pi / std::max(dx, dt);
        for (int i = 0; i < 13; ++i) p.radii.push_back(nyq * std::exp2(-3.1 + 3.0 * i / 12.0));
        for (int i = 0; i < 72; ++i) p.directions.push_back(2 * pi * i / 72.0);
        return p;
    }

    void validate(double dx, double dt) const {
        require(window_width >= 4.0, "window_width must be at least 4 grid spacings");
        require(radii.size() >= 2 && tail >= 2 && tail <= radii.size(), "probe needs at least two fit radii");
        require(std::is_sorted(radii.begin(), radii.end()) && radii.front() > 0, "radii must be positive, ascending");
        const double nyq = pi / std::max(dx, dt);
        require(radii.back() <= nyq * (1 + 1e-12), "radii must stay below Nyquist");
        require(radii.back() / radii.front() >= 8.0 * (1 - 1e-12), "radii must span at least 3 octaves");
        require(!directions.empty(), "probe needs directions");
    }

    /// Half-width of the truncated window patch, in samples.
    std::size_t patch_half() const { return static_cast<std::size_t>(std::ceil(8.5 * window_width)); }
};

struct WFPoint {
    double x = 0, t = 0;
};

struct WFEntry {
    double x = 0, t = 0;
    double dir_xi = 0, dir_tau = 0;
    double decay = 0;  ///< fitted decay order, -(slope of log|u_w^| vs log r)
};

struct WFPointError {
    WFPoint point;
    std::string message;
};

struct WFEstimate {
    std::vector<WFEntry> entries;
    std::vector<double> probed_times;
    std::vector<WFPointError> errors;
    nlohmann::json provenance = nlohmann::json::object();
};

namespace detail {

inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

/// Fitted slope of log|F[u g](r w)| against log r for every probe direction w,
/// g a Gaussian window at the point. -inf marks a direction whose amplitude
/// sits at the floor. The field is periodic in x; in t the whole window patch
/// must lie inside the sampled range.
inline std::vector<double> directional_decay(const Field& u, const WFPoint& pt, const WFProbe& probe) {
    const double dx = u.grid.spacing();
    const double dt = u.uniform_dt();
    probe.validate(dx, dt);
    const long h = static_cast<long>(probe.patch_half());
    const long it = std::lround((pt.t - u.times.front()) / dt);
    if (it - h < 0 || it + h >= static_cast<long>(u.nt()) ||
        std::abs(pt.t - u.times.front() - it * dt) > 0.5 * dt + 1e-12)
        throw PlacementError("point too close to the time boundary for the window patch");
    const long n = static_cast<long>(u.nx());
    const long ix = std::lround((pt.x - u.grid.origin()) / dx);
    if (2 * h + 1 > n) throw PlacementError("window patch wider than the periodic x-domain");
    const std::size_t m = static_cast<std::size_t>(2 * h + 1);

    // Windowed patch, rows = time.
    std::vector<cplx> pg(m * m);
    std::vector<double> X(m), T(m);
    const double sx = probe.window_width * dx, st = probe.window_width * dt;
    double mass = 0;
    for (long a = -h; a <= h; ++a) {
        T[a + h] = a * dt;
        X[a + h] = a * dx;
    }
    for (long a = -h; a <= h; ++a)
        for (long c = -h; c <= h; ++c) {
            const long jx = ((ix + c) % n + n) % n;
            const double g = std::exp(-0.5 * (X[c + h] * X[c + h] / (sx * sx) + T[a + h] * T[a + h] / (st * st)));
            const cplx v = u.at(static_cast<std::size_t>(it + a), static_cast<std::size_t>(jx)) * g;
            pg[(a + h) * m + (c + h)] = v;
            mass += g;
        }

    double umax = 0;
    for (const auto& v : u.data) umax = std::max(umax, std::abs(v));
    mass *= umax;
    std::vector<double> out(probe.directions.size(), -std::numeric_limits<double>::infinity());
    if (mass == 0.0) return out;
    const std::size_t nr = probe.radii.size(), tail = probe.tail;
    std::vector<double> fit_x(tail), fit_y(tail);
    std::vector<cplx> ex(m), et(m);
    for (std::size_t d = 0; d < probe.directions.size(); ++d) {
        const double cth = std::cos(probe.directions[d]), sth = std::sin(probe.directions[d]);
        // Decay is measured against the difference-operator symbol
        // |(2 sin(r xi dx/2)/dx, 2 sin(r tau dt/2)/dt)| so a sampled jump keeps
        // order one all the way up to Nyquist.
        for (std::size_t k = 0; k < tail; ++k) {
            const double r = probe.radii[nr - tail + k];
            fit_x[k] = std::log(std::hypot(2 * std::sin(0.5 * r * cth * dx) / dx, 2 * std::sin(0.5 * r * sth * dt) / dt));
        }
        std::vector<double> amp(nr);
        for (std::size_t k = 0; k < nr; ++k) {
            const double r = probe.radii[k];
            for (std::size_t c = 0; c < m; ++c) ex[c] = std::polar(1.0, -r * cth * X[c]);
            for (std::size_t a = 0; a < m; ++a) et[a] = std::polar(1.0, -r * sth * T[a]);
            cplx acc = 0;
            for (std::size_t a = 0; a < m; ++a) {
                cplx s = 0;
                const cplx* rowp = &pg[a * m];
                for (std::size_t c = 0; c < m; ++c) s += rowp[c] * ex[c];
                acc += s * et[a];
            }
            amp[k] = std::abs(acc) / mass;
        }
        if (amp.back() <= probe.floor) continue;
        for (std::size_t k = 0; k < tail; ++k) fit_y[k] = std::log(std::max(amp[nr - tail + k], probe.floor));
        out[d] = detail::ls_slope(fit_x, fit_y);
    }
    return out;
}

namespace detail {

// Canonical representative of the antipodal pair {w, -w}: tau > 0, or tau = 0 and xi > 0.
inline std::pair<double, double> canonical_direction(double xi, double tau) {
    if (tau < -1e-12 || (std::abs(tau) <= 1e-12 && xi < 0)) return {-xi, -tau};
    return {xi, tau};
}

} // namespace detail

/// Runs directional_decay at each candidate point and keeps the directions
/// whose decay order is below the threshold. Antipodal directions are merged,
/// keeping the slower decay. Placement failures are collected per point.
inline WFEstimate wavefront_estimate(const Field& u, const WFProbe& probe, const std::vector<WFPoint>& points) {
    WFEstimate est;
    est.provenance = {{"window_width", probe.window_width},
                      {"radii", probe.radii},
                      {"directions", probe.directions.size()},
                      {"smooth_exponent_threshold", probe.smooth_exponent_threshold},
                      {"floor", probe.floor},
                      {"tail", probe.tail}};
    for (const auto& pt : points) {
        std::vector<double> slopes;
        try {
            slopes = directional_decay(u, pt, probe);
        } catch (const PlacementError& e) {
            est.errors.push_back({pt, e.what()});
            continue;
        }
        if (std::find(est.probed_times.begin(), est.probed_times.end(), pt.t) == est.probed_times.end())
            est.probed_times.push_back(pt.t);
        std::vector<WFEntry> merged;
        for (std::size_t d = 0; d < slopes.size(); ++d) {
            const double decay = -slopes[d];
            if (!(decay < probe.smooth_exponent_threshold)) continue;
            auto [cx, ct] = detail::canonical_direction(std::cos(probe.directions[d]), std::sin(probe.directions[d]));
            auto it = std::find_if(merged.begin(), merged.end(), [&](const WFEntry& e) {
                return std::abs(e.dir_xi - cx) < 1e-9 && std::abs(e.dir_tau - ct) < 1e-9;
            });
            if (it == merged.end()) merged.push_back({pt.x, pt.t, cx, ct, decay});
            else it->decay = std::min(it->decay, decay);
        }
        est.entries.insert(est.entries.end(), merged.begin(), merged.end());
    }
    std::stable_sort(est.entries.begin(), est.entries.end(), [](const WFEntry& a, const WFEntry& b) {
        return a.t != b.t ? a.t < b.t : a.x < b.x;
    });
    std::sort(est.probed_times.begin(), est.probed_times.end());
    return est;
}

/// Appends the entries, probed times and errors of another estimate.
inline void merge_estimates(WFEstimate& into, const WFEstimate& other) {
    into.entries.insert(into.entries.end(), other.entries.begin(), other.entries.end());
    into.errors.insert(into.errors.end(), other.errors.begin(), other.errors.end());
    for (double t : other.probed_times)
        if (std::find(into.probed_times.begin(), into.probed_times.end(), t) == into.probed_times.end())
            into.probed_times.push_back(t);
    std::stable_sort(into.entries.begin(), into.entries.end(), [](const WFEntry& a, const WFEntry& b) {
        return a.t != b.t ? a.t < b.t : a.x < b.x;
    });
    std::sort(into.probed_times.begin(), into.probed_times.end());
    if (into.provenance.empty()) into.provenance = other.provenance;
}

enum class PredictionKind { empty, W0, stationary, timefrac_cone, moving };

/// Predicted wavefront set.
/// - stationary: singular at each x in `locations`, direction (+-1, 0), every t.
/// - W0: stationary with the single location 0.
/// - timefrac_cone: lines x = x0 +- sqrt(b/a) t with conormals satisfying
///   tau^2 = (b/a) xi^2; (+-1, 0) entries at any of `locations` are allowed.
/// - moving: x = c + speed t for c in `locations`, conormal (1, -speed).
struct WFPrediction {
    PredictionKind kind = PredictionKind::empty;
    std::vector<double> locations;
    double x0 = 0.0;
    double speed = 1.0;

    static WFPrediction none() { return {}; }
    static WFPrediction w0() { return {PredictionKind::W0, {0.0}, 0.0, 0.0}; }
    static WFPrediction stationary(std::vector<double> xs) { return {PredictionKind::stationary, std::move(xs)}; }
    static WFPrediction cone(double a, double b, double x0, std::vector<double> stationary_xs = {}) {
        return {PredictionKind::timefrac_cone, std::move(stationary_xs), x0, std::sqrt(b / a)};
    }
    static WFPrediction moving(std::vector<double> xs, double speed) {
        return {PredictionKind::moving, std::move(xs), 0.0, speed};
    }
};

struct WFCompareReport {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t false_positives = 0;
    std::size_t entries = 0;
    double false_positive_ratio = 0;
    bool pass = false;
};

namespace detail {

inline double angle_between_lines(double ax, double at, double bx, double bt) {
    const double c = std::abs(ax * bx + at * bt) / (std::hypot(ax, at) * std::hypot(bx, bt));
    return std::acos(std::min(1.0, c));
}

struct PredictedTarget {
    double x;
    double dir_xi, dir_tau;
    bool required;
};

inline std::vector<PredictedTarget> targets_at(const WFPrediction& p, double t) {
    std::vector<PredictedTarget> out;
    switch (p.kind) {
        case PredictionKind::empty: break;
        case PredictionKind::W0:
        case PredictionKind::stationary:
            for (double c : p.locations) out.push_back({c, 1.0, 0.0, true});
            break;
        case PredictionKind::timefrac_cone:
            out.push_back({p.x0 + p.speed * t, 1.0, -p.speed, true});
            out.push_back({p.x0 - p.speed * t, 1.0, p.speed, true});
            for (double c : p.locations) out.push_back({c, 1.0, 0.0, false});
            break;
        case PredictionKind::moving:
            for (double c : p.locations) out.push_back({c + p.speed * t, 1.0, -p.speed, true});
            break;
    }
    return out;
}

} // namespace detail

/// Matches estimate entries against the prediction. Passes iff the false
/// positive ratio is below 10% and every required target is hit at every
/// probed time.
inline WFCompareReport wf_compare(const WFEstimate& est, const WFPrediction& pred, double spatial_tol,
                                  double angular_tol) {
    WFCompareReport rep;
    rep.entries = est.entries.size();
    for (const auto& e : est.entries) {
        bool matched = false;
        for (const auto& tg : detail::targets_at(pred, e.t))
            if (std::abs(e.x - tg.x) <= spatial_tol &&
                detail::angle_between_lines(e.dir_xi, e.dir_tau, tg.dir_xi, tg.dir_tau) <= angular_tol) {
                matched = true;
                break;
            }
        if (matched) ++rep.hits;
        else ++rep.false_positives;
    }
    for (double t : est.probed_times) {
        const auto targets = detail::targets_at(pred, t);
        for (const auto& tg : targets) {
            if (!tg.required) continue;
            const bool hit = std::any_of(est.entries.begin(), est.entries.end(), [&](const WFEntry& e) {
                return e.t == t && std::abs(e.x - tg.x) <= spatial_tol &&
                       detail::angle_between_lines(e.dir_xi, e.dir_tau, tg.dir_xi, tg.dir_tau) <= angular_tol;
            });
            if (!hit) ++rep.misses;
        }
    }
    const bool nothing_probed = est.probed_times.empty() && pred.kind != PredictionKind::empty;
    rep.false_positive_ratio = rep.entries ? static_cast<double>(rep.false_positives) / rep.entries : 0.0;
    rep.pass = !nothing_probed && rep.misses == 0 && rep.false_positive_ratio < 0.1;
    return rep;
}

/// CSV "x,t,dir_xi,dir_tau,decay".
inline void write_wavefront_csv(const WFEstimate& est, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    out << "x,t,dir_xi,dir_tau,decay\n";
    for (const auto& e : est.entries)
        out << format_g17(e.x) << ',' << format_g17(e.t) << ',' << format_g17(e.dir_xi) << ','
            << format_g17(e.dir_tau) << ',' << format_g17(e.decay) << '\n';
}

inline nlohmann::json to_json(const WFCompareReport& r) {
    return {{"hits", r.hits},
            {"misses", r.misses},
            {"false_positives", r.false_positives},
            {"entries", r.entries},
            {"false_positive_ratio", r.false_positive_ratio},
            {"pass", r.pass}};
}

} // namespace fzw
