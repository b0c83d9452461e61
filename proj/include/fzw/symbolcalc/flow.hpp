#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "fzw/core/io.hpp"
#include "fzw/symbolcalc/cutoff.hpp"

namespace fzw {

struct PhasePoint {
    double x = 0, t = 0, xi = 0, tau = 0;
};

struct TrajectoryPoint {
    double s = 0;
    PhasePoint z;
};

/// Hamiltonian field of q = -tau b~: x' = tau d_xi b~, t' = b~ + tau d_tau b~,
/// xi' = tau' = 0.
inline PhasePoint hamiltonian_field(const PhasePoint& z, const Cutoff& b) {
    const auto g = b.gradient(z.xi, z.tau);
    return {z.tau * g.d_xi, b(z.xi, z.tau) + z.tau * g.d_tau, 0.0, 0.0};
}

inline std::vector<TrajectoryPoint> bicharacteristic_flow(const PhasePoint& start, const std::vector<double>& s_values,
                                                          const CutoffSpec& spec, double max_step = 0.05) {
    if (start.xi == 0.0 && start.tau == 0.0) throw ParameterError("flow needs a nonzero fiber (xi0, tau0)");
    const Cutoff b(spec);
    std::vector<TrajectoryPoint> out;
    out.reserve(s_values.size());
    for (double s : s_values) {
        if (start.tau == 0.0) {
            out.push_back({s, {start.x, start.t + s * b(start.xi, 0.0), start.xi, 0.0}});
            continue;
        }
        PhasePoint z = start;
        const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(s) / max_step)));
        const double h = s / steps;
        auto add = [](PhasePoint a, const PhasePoint& k, double c) {
            a.x += c * k.x;
            a.t += c * k.t;
            a.xi += c * k.xi;
            a.tau += c * k.tau;
            return a;
        };
        for (int i = 0; i < steps; ++i) {
            const auto k1 = hamiltonian_field(z, b);
            const auto k2 = hamiltonian_field(add(z, k1, h / 2), b);
            const auto k3 = hamiltonian_field(add(z, k2, h / 2), b);
            const auto k4 = hamiltonian_field(add(z, k3, h), b);
            z.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
            z.t += h / 6 * (k1.t + 2 * k2.t + 2 * k3.t + k4.t);
            z.xi += h / 6 * (k1.xi + 2 * k2.xi + 2 * k3.xi + k4.xi);
            z.tau += h / 6 * (k1.tau + 2 * k2.tau + 2 * k3.tau + k4.tau);
        }
        out.push_back({s, z});
    }
    return out;
}

/// CSV "s,x,t,xi,tau".
inline void write_trajectory_csv(const std::vector<TrajectoryPoint>& tr, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path + " for writing");
    out << "s,x,t,xi,tau\n";
    for (const auto& p : tr)
        out << format_g17(p.s) << ',' << format_g17(p.z.x) << ',' << format_g17(p.z.t) << ',' << format_g17(p.z.xi)
            << ',' << format_g17(p.z.tau) << '\n';
}

} // namespace fzw
