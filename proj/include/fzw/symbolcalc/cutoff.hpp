#pragma once

#include <cmath>

#include "fzw/core/errors.hpp"
#include "fzw/core/params.hpp"
#include "fzw/core/smooth.hpp"

namespace fzw {

/// Axis of the cone Gamma around which the cutoff vanishes.
enum class CutoffAxis { tau_axis, xi_axis };

/// Gamma = disc(r0) u cone(phi0), Gamma' = disc(r1) u cone(phi1); half-angles
/// are measured from the cone axis.
struct CutoffSpec {
    CutoffAxis axis = CutoffAxis::tau_axis;
    double r0 = 0.25;
    double r1 = 0.5;
    double phi0 = 0.2;
    double phi1 = 0.4;

    void validate() const {
        if (!(r0 > 0 && r1 > r0)) throw ParameterError("cutoff radii need 0 < r0 < r1");
        if (!(phi0 > 0 && phi1 > phi0 && phi1 < pi / 2))
            throw ParameterError("cutoff angles need 0 < phi0 < phi1 < pi/2");
    }
};

struct Gradient2 {
    double d_xi = 0;
    double d_tau = 0;
};

/// b~(xi,tau) = S((psi - phi0)/(phi1 - phi0)) * S((rho - r0)/(r1 - r0)), with psi
/// the angle to the cone axis, rho the radius and S the exp-based smooth step.
class Cutoff {
public:
    explicit Cutoff(const CutoffSpec& s) : spec_(s) { s.validate(); }

    const CutoffSpec& spec() const { return spec_; }

    double operator()(double xi, double tau) const {
        const auto [along, perp] = split(xi, tau);
        const double rho = std::hypot(along, perp);
        if (rho <= spec_.r0) return 0.0;
        const double psi = std::atan2(std::abs(perp), std::abs(along));
        return angular(psi) * radial(rho);
    }

    Gradient2 gradient(double xi, double tau) const {
        const auto [along, perp] = split(xi, tau);
        const double rho2 = along * along + perp * perp;
        const double rho = std::sqrt(rho2);
        if (rho <= spec_.r0) return {};
        const double psi = std::atan2(std::abs(perp), std::abs(along));
        const double dang = spec_.phi1 - spec_.phi0, drad = spec_.r1 - spec_.r0;
        const double sa = angular(psi), sr = radial(rho);
        const double dsa = smooth_step_derivative((psi - spec_.phi0) / dang) / dang;
        const double dsr = smooth_step_derivative((rho - spec_.r0) / drad) / drad;
        const double dpsi_da = -sgn(along) * std::abs(perp) / rho2;
        const double dpsi_dp = sgn(perp) * std::abs(along) / rho2;
        const double d_along = dsa * dpsi_da * sr + sa * dsr * along / rho;
        const double d_perp = dsa * dpsi_dp * sr + sa * dsr * perp / rho;
        if (spec_.axis == CutoffAxis::tau_axis) return {d_perp, d_along};
        return {d_along, d_perp};
    }

private:
    static double sgn(double v) { return (v > 0) - (v < 0); }
    std::pair<double, double> split(double xi, double tau) const {
        return spec_.axis == CutoffAxis::tau_axis ? std::pair{tau, xi} : std::pair{xi, tau};
    }
    double angular(double psi) const { return smooth_step((psi - spec_.phi0) / (spec_.phi1 - spec_.phi0)); }
    double radial(double rho) const { return smooth_step((rho - spec_.r0) / (spec_.r1 - spec_.r0)); }

    CutoffSpec spec_;
};

inline Cutoff build_cutoff(const CutoffSpec& spec) { return Cutoff(spec); }

} // namespace fzw
