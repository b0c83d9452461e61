#pragma once

#include <cmath>
#include <vector>

#include "fzw/multipliers/multiplier.hpp"

namespace fzw {

/// Log-spaced samples 2^e for e in [log2 min_abs, log2 max_abs] with
/// per_octave points per octave, mirrored to negative values if symmetric.
struct DyadicSampleSet {
    double min_abs = 1.0 / 1024;
    double max_abs = 1 << 20;
    int per_octave = 16;
    bool symmetric = true;

    void validate() const {
        if (!(min_abs > 0.0)) throw ParameterError("dyadic sample set must exclude 0");
        require(max_abs > min_abs, "dyadic sample set needs max_abs > min_abs");
        require(per_octave >= 1, "per_octave must be >= 1");
    }

    std::vector<double> points() const {
        validate();
        const double lo = std::log2(min_abs), hi = std::log2(max_abs);
        const auto steps = static_cast<long>(std::ceil((hi - lo) * per_octave - 1e-9));
        std::vector<double> out;
        for (long k = 0; k <= steps; ++k) {
            const double e = std::min(hi, lo + static_cast<double>(k) / per_octave);
            out.push_back(std::exp2(e));
            if (symmetric) out.push_back(-std::exp2(e));
        }
        return out;
    }

    /// Twice the density, one octave wider at both ends.
    DyadicSampleSet refined() const { return {min_abs / 2, max_abs * 2, per_octave * 2, symmetric}; }
};

struct MikhlinReport {
    double sup_bound = 0;           ///< sup |m| on the sample set
    double sup_log_derivative = 0;  ///< sup |tau m'(tau)| on the sample set
    double sup_bound_refined = 0;
    double sup_log_derivative_refined = 0;
    bool pass = false;
};

namespace detail {

struct MikhlinSup {
    double bound = 0, logder = 0;
    bool finite = true;
};

inline MikhlinSup mikhlin_sweep(const Multiplier1D& m, const DyadicSampleSet& set) {
    // tau m'(tau) = d m / d(log|tau|), centered in log scale.
    constexpr double h = 1e-4;
    MikhlinSup s;
    for (double t : set.points()) {
        const cplx v = m(t);
        const cplx d = (m(t * std::exp(h)) - m(t * std::exp(-h))) / (2 * h);
        if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(d))) s.finite = false;
        s.bound = std::max(s.bound, std::abs(v));
        s.logder = std::max(s.logder, std::abs(d));
    }
    return s;
}

inline bool stable(double coarse, double fine, double rel) {
    const double scale = std::max(std::abs(coarse), std::abs(fine));
    if (scale <= 1e-12) return true;
    return std::abs(fine - coarse) <= rel * scale;
}

} // namespace detail

/// Sampled Mikhlin hypothesis: sup|m| and sup|tau m'| must be finite and stable
/// within 10% when the sample set is refined.
inline MikhlinReport mikhlin_check(const Multiplier1D& m, const DyadicSampleSet& set) {
    set.validate();
    const auto c = detail::mikhlin_sweep(m, set);
    const auto f = detail::mikhlin_sweep(m, set.refined());
    MikhlinReport r;
    r.sup_bound = c.bound;
    r.sup_log_derivative = c.logder;
    r.sup_bound_refined = f.bound;
    r.sup_log_derivative_refined = f.logder;
    r.pass = c.finite && f.finite && detail::stable(c.bound, f.bound, 0.1) && detail::stable(c.logder, f.logder, 0.1);
    return r;
}

} // namespace fzw
