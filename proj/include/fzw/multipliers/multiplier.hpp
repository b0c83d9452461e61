#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fzw/core/fft.hpp"
#include "fzw/core/field.hpp"
#include "fzw/core/io.hpp"

namespace fzw {

/// w = e^{i alpha pi/2} (tau - i0)^alpha on the lower boundary branch:
/// |tau|^alpha e^{i alpha pi/2} for tau > 0 and |tau|^alpha e^{-i alpha pi/2}
/// for tau < 0. At alpha = 0 the power is identically 1.
inline cplx zener_power(double tau, double alpha) {
    if (alpha == 0.0) return 1.0;
    if (tau == 0.0) return 0.0;
    const double mag = std::pow(std::abs(tau), alpha);
    const double ph = (tau > 0 ? 1.0 : -1.0) * alpha * pi / 2;
    return std::polar(mag, ph);
}

/// l_alpha(tau) = (1 + b w) / (1 + a w).
inline cplx l_alpha_eval(double tau, double alpha, double a, double b) {
    const cplx w = zener_power(tau, alpha);
    if (std::isinf(w.real()) || std::isinf(w.imag())) return b / a;
    return (1.0 + b * w) / (1.0 + a * w);
}

inline cplx l_alpha_eval(double tau, const ModelParams& p) { return l_alpha_eval(tau, p.alpha(), p.a(), p.b()); }

/// i sin(beta pi/2) sgn(xi) |xi|^beta.
inline cplx e_beta_mult_eval(double xi, double beta) {
    require(beta > 0.0 && beta <= 1.0, "beta must lie in (0,1]");
    if (xi == 0.0) return 0.0;
    const double s = beta == 1.0 ? 1.0 : std::sin(beta * pi / 2);
    return {0.0, s * (xi > 0 ? 1.0 : -1.0) * std::pow(std::abs(xi), beta)};
}

enum class MultiplierKind { l_alpha, e_beta, homogeneous, custom };

/// hermitian: m(-xi) = conj(m(xi)), so the operator preserves real fields.
enum class Symmetry { none, hermitian };

enum class ZeroModePolicy {
    zero,   ///< set the zero-frequency coefficient of singular multipliers to 0
    strict  ///< throw SingularModeError if that coefficient is not already ~0
};

enum class Axis { x, t };

class Multiplier1D {
public:
    using Fn = std::function<cplx(double)>;

    static Multiplier1D l_alpha(const ModelParams& p) {
        const double al = p.alpha(), a = p.a(), b = p.b();
        return {MultiplierKind::l_alpha, [=](double t) { return l_alpha_eval(t, al, a, b); }, Symmetry::hermitian,
                false};
    }
    static Multiplier1D l_alpha(double alpha, double a, double b) {
        return {MultiplierKind::l_alpha, [=](double t) { return l_alpha_eval(t, alpha, a, b); }, Symmetry::hermitian,
                false};
    }
    static Multiplier1D e_beta(double beta) {
        require(beta > 0.0 && beta <= 1.0, "beta must lie in (0,1]");
        return {MultiplierKind::e_beta, [=](double xi) { return e_beta_mult_eval(xi, beta); }, Symmetry::hermitian,
                false};
    }
    /// scale * |xi|^gamma; the zero frequency is 0 for gamma > 0, scale for
    /// gamma = 0 and singular for gamma < 0.
    static Multiplier1D homogeneous(double gamma, double scale = 1.0) {
        Multiplier1D m{MultiplierKind::homogeneous,
                       [=](double xi) -> cplx {
                           if (xi == 0.0) {
                               if (gamma > 0) return 0.0;
                               if (gamma == 0) return scale;
                               return std::numeric_limits<double>::quiet_NaN();
                           }
                           return scale * std::pow(std::abs(xi), gamma);
                       },
                       Symmetry::hermitian, gamma < 0};
        m.gamma_ = gamma;
        m.scale_ = scale;
        return m;
    }
    /// A^sigma: b_beta |xi|^sigma.
    static Multiplier1D a_sigma(const ModelParams& p) { return homogeneous(p.sigma(), p.b_beta()); }
    /// B^sigma: 1/(b_beta |xi|^sigma).
    static Multiplier1D b_sigma(const ModelParams& p) { return homogeneous(-p.sigma(), 1.0 / p.b_beta()); }

    static Multiplier1D custom(Fn f, Symmetry s = Symmetry::none, bool singular_at_zero = false) {
        return {MultiplierKind::custom, std::move(f), s, singular_at_zero};
    }

    cplx operator()(double xi) const { return fn_(xi); }
    MultiplierKind kind() const { return kind_; }
    Symmetry symmetry() const { return sym_; }
    bool singular_at_zero() const { return singular_; }
    double gamma() const { return gamma_; }
    double scale() const { return scale_; }

private:
    Multiplier1D(MultiplierKind k, Fn f, Symmetry s, bool singular)
        : kind_(k), fn_(std::move(f)), sym_(s), singular_(singular) {}
    MultiplierKind kind_;
    Fn fn_;
    Symmetry sym_;
    bool singular_;
    double gamma_ = 0.0;
    double scale_ = 1.0;
};

namespace detail {

// Multiplier values on the FFT-native frequency grid. The unpaired Nyquist
// bin of a hermitian multiplier keeps only the real part; for odd imaginary
// multipliers this zeroes the mode.
inline std::vector<cplx> multiplier_table(const Multiplier1D& m, std::size_t n, double period) {
    auto freqs = fft_frequencies(n, period);
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == 0 && m.singular_at_zero()) {
            out[k] = 0.0;
            continue;
        }
        out[k] = m(freqs[k]);
    }
    if (n % 2 == 0 && m.symmetry() == Symmetry::hermitian) out[n / 2] = out[n / 2].real();
    return out;
}

inline void check_zero_mode(std::span<const cplx> spectrum, ZeroModePolicy policy) {
    if (policy != ZeroModePolicy::strict) return;
    double mx = 0.0;
    for (auto v : spectrum) mx = std::max(mx, std::abs(v));
    if (std::abs(spectrum[0]) > 1e-12 * std::max(mx, std::numeric_limits<double>::min()) && mx > 0)
        throw SingularModeError("singular multiplier applied to data with nonzero mean under strict policy");
}

} // namespace detail

/// Fourier multiplier along one axis. Along t the field must have a uniform
/// time grid, which is treated as one period of length nt*dt.
inline Field apply_multiplier(const Field& f, Axis axis, const Multiplier1D& m,
                              ZeroModePolicy policy = ZeroModePolicy::zero) {
    Field out = f;
    if (axis == Axis::x) {
        const auto table = detail::multiplier_table(m, f.nx(), f.grid.length());
        for (std::size_t i = 0; i < f.nt(); ++i) {
            auto r = out.row(i);
            fft::forward(r);
            if (m.singular_at_zero()) detail::check_zero_mode(r, policy);
            for (std::size_t k = 0; k < r.size(); ++k) r[k] *= table[k];
            fft::inverse(r);
        }
    } else {
        const std::size_t nt = f.nt();
        const double dt = f.uniform_dt();
        const auto table = detail::multiplier_table(m, nt, dt * static_cast<double>(nt));
        std::vector<cplx> col(nt);
        for (std::size_t j = 0; j < f.nx(); ++j) {
            for (std::size_t i = 0; i < nt; ++i) col[i] = f.at(i, j);
            fft::forward(col);
            if (m.singular_at_zero()) detail::check_zero_mode(col, policy);
            for (std::size_t k = 0; k < nt; ++k) col[k] *= table[k];
            fft::inverse(col);
            for (std::size_t i = 0; i < nt; ++i) out.at(i, j) = col[i];
        }
    }
    out.set_real_tag(f.tagged_real() && m.symmetry() == Symmetry::hermitian);
    return out;
}

inline GridFunction apply_multiplier(const GridFunction& g, const Multiplier1D& m,
                                     ZeroModePolicy policy = ZeroModePolicy::zero) {
    Field f(g.grid, {0.0});
    std::copy(g.values.begin(), g.values.end(), f.data.begin());
    return apply_multiplier(f, Axis::x, m, policy).slice(0);
}

/// CSV sweep "tau,re,im" of a multiplier.
inline void write_multiplier_sweep(const Multiplier1D& m, const std::vector<double>& taus, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    out << "tau,re,im\n";
    for (double t : taus) {
        const cplx v = m(t);
        out << format_g17(t) << ',' << format_g17(v.real()) << ',' << format_g17(v.imag()) << '\n';
    }
}

} // namespace fzw
