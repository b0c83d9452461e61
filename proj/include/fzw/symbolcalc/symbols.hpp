#pragma once

#include <optional>

#include "fzw/multipliers/multiplier.hpp"
#include "fzw/spacefrac/fundamental.hpp"
#include "fzw/symbolcalc/cutoff.hpp"

namespace fzw {

enum class SymbolKind { y, z, q, p, a0, a1 };

/// An evaluable symbol with its declared class S^m_{rho,delta}. For a0 and a1
/// the second variable is the base variable t, otherwise the frequency tau.
struct SymbolSpec {
    SymbolKind kind = SymbolKind::y;
    ModelParams params{0.5, 0.5, 1.0, 2.0};
    std::optional<CutoffSpec> cutoff;
    double order = 1.0;
    double rho = 1.0;
    double delta = 0.0;

    bool second_is_base() const { return kind == SymbolKind::a0 || kind == SymbolKind::a1; }
};

/// rho_cut: 0 for |xi| <= 1/2, 1 for |xi| >= 1.
inline double low_frequency_cut(double xi) { return smooth_switch(std::abs(xi), 0.5, 1.0); }

namespace detail {

inline double cutoff_value(const SymbolSpec& s, double xi, double tau) {
    if (!s.cutoff) return 1.0;
    return Cutoff(*s.cutoff)(xi, tau);
}

} // namespace detail

inline cplx symbol_eval(const SymbolSpec& s, double xi, double v) {
    const auto& p = s.params;
    switch (s.kind) {
        case SymbolKind::y: return (-v + dispersion(xi, p)) * detail::cutoff_value(s, xi, v);
        case SymbolKind::z: return (-v * v + l_alpha_eval(v, p) * xi * xi) * detail::cutoff_value(s, xi, v);
        case SymbolKind::q: return -v * detail::cutoff_value(s, xi, v);
        case SymbolKind::p: return (-v * v + l_alpha_eval(v, p) * xi * xi) * detail::cutoff_value(s, xi, v);
        case SymbolKind::a0: return e0_hat(xi, v, p) * low_frequency_cut(xi);
        case SymbolKind::a1: return e1_hat(xi, v, p) * low_frequency_cut(xi);
    }
    return 0.0;
}

} // namespace fzw
