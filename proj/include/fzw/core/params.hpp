#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "fzw/core/errors.hpp"

namespace fzw {

using std::numbers::pi;

/// Fractional orders and Zener constants. b_beta and sigma are computed
/// from beta on every call.
class ModelParams {
public:
    ModelParams(double alpha, double beta, double a, double b)
        : alpha_(alpha), beta_(beta), a_(a), b_(b) {
        if (!(alpha >= 0.0 && alpha < 1.0))
            throw ParameterError("alpha must lie in [0,1), got " + std::to_string(alpha));
        if (!(beta > 0.0 && beta <= 1.0))
            throw ParameterError("beta must lie in (0,1], got " + std::to_string(beta));
        if (!(a > 0.0 && b > a))
            throw ParameterError("Zener constants need 0 < a < b");
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double a() const { return a_; }
    double b() const { return b_; }

    double b_beta() const { return beta_ == 1.0 ? 1.0 : std::sqrt(std::sin(beta_ * pi / 2)); }
    double sigma() const { return (1.0 + beta_) / 2.0; }

private:
    double alpha_, beta_, a_, b_;
};

} // namespace fzw
