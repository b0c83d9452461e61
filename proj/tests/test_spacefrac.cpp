#include <gtest/gtest.h>

#include <random>

#include "fzw/spacefrac/fundamental.hpp"
#include "fzw/spacefrac/hardy.hpp"
#include "fzw/spacefrac/solver.hpp"

using namespace fzw;

namespace {

double gaussian(double x, double w) { return std::exp(-x * x / (2 * w * w)); }

double rel_l2_row(std::span<const cplx> a, const std::vector<double>& b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += b[i] * b[i];
    }
    return std::sqrt(num / den);
}

} // namespace

TEST(Fundamental, InitialValues) {
    for (double beta : {0.3, 0.5, 1.0}) {
        const ModelParams p(0.0, beta, 1.0, 2.0);
        for (double xi : {-100.0, -1.0, 0.0, 0.5, 33.0}) {
            EXPECT_EQ(fundamental_hat(FundamentalKind::E0, xi, 0.0, p), cplx(1.0));
            EXPECT_EQ(fundamental_hat(FundamentalKind::E1, xi, 0.0, p), cplx(0.0));
            EXPECT_EQ(fundamental_hat(FundamentalKind::Etilde, xi, 0.0, p), cplx(1.0));
        }
    }
}

TEST(Fundamental, ClassicalLimit) {
    const ModelParams p(0.0, 1.0, 1.0, 2.0);
    for (double xi : {-3.0, 0.7, 12.0})
        for (double t : {0.1, 1.0, 4.0}) EXPECT_NEAR(e0_hat(xi, t, p), std::cos(std::abs(xi) * t), 1e-15);
}

TEST(Fundamental, E1AtZeroFrequencyIsT) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    EXPECT_EQ(e1_hat(0.0, 2.5, p), 2.5);
}

TEST(Fundamental, TimeDerivativeOfE1IsE0) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    for (double xi : {0.0, 0.3, 2.0, 17.0}) {
        const double t = 0.7;
        double prev = 0;
        for (int k = 0; k < 6; ++k) {
            const double h = 0.1 / std::exp2(k);
            const double d = (e1_hat(xi, t + h, p) - e1_hat(xi, t - h, p)) / (2 * h);
            const double e = std::abs(d - e0_hat(xi, t, p));
            if (k > 0 && prev > 1e-10) {
                EXPECT_NEAR(std::log2(prev / e), 2.0, 0.2) << xi;
            }
            prev = e;
        }
    }
}

TEST(Fundamental, ComplexStepDerivative) {
    const ModelParams p(0.0, 0.8, 1.0, 2.0);
    for (double xi : {0.5, 5.0}) {
        const double h = 1e-20;
        const cplx d = e1_hat(xi, cplx(1.3, h), p);
        EXPECT_NEAR(d.imag() / h, e0_hat(xi, 1.3, p), 1e-14);
    }
}

TEST(Fundamental, HalfWaveReconstructsE0) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    for (double xi : {-4.0, 0.0, 1.5})
        for (double t : {0.2, 3.0}) {
            const cplx et = etilde_hat(xi, t, p);
            EXPECT_NEAR(std::abs(0.5 * (et + std::conj(et)) - e0_hat(xi, t, p)), 0.0, 1e-15);
        }
}

TEST(SpaceSolver, ConstantDataStaysConstant) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    const auto g = make_grid(64, 10.0, -5.0);
    const auto u0 = sample(g, [](double) { return 3.0; });
    const auto v0 = sample(g, [](double) { return 0.0; });
    const auto u = solve_space_fractional(u0, v0, {0.0, 1.0, 5.0}, p);
    for (auto v : u.data) EXPECT_NEAR(std::abs(v - 3.0), 0.0, 1e-13);
}

TEST(SpaceSolver, DAlembert) {
    const ModelParams p(0.0, 1.0, 1.0, 2.0);
    const auto g = make_grid(2048, 64.0, -32.0);
    const double w = 0.5;
    const auto u0 = sample(g, [&](double x) { return gaussian(x, w); });
    const auto v0 = sample(g, [](double) { return 0.0; });
    const std::vector<double> times{0.5, 1.0, 2.0, 4.0, 8.0};
    const auto u = solve_space_fractional(u0, v0, times, p);
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<double> ref(g.n());
        for (std::size_t j = 0; j < g.n(); ++j)
            ref[j] = 0.5 * (gaussian(g.x(j) - times[i], w) + gaussian(g.x(j) + times[i], w));
        EXPECT_LT(rel_l2_row(u.row(i), ref), 1e-8) << times[i];
    }
    EXPECT_TRUE(u.real_tag_consistent());
}

TEST(SpaceSolver, GridMismatch) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    const GridFunction a(make_grid(16, 1.0, 0.0)), b(make_grid(32, 1.0, 0.0));
    EXPECT_THROW(solve_space_fractional(a, b, {1.0}, p), ParameterError);
    EXPECT_THROW(solve_space_fractional(a, a, {-1.0}, p), ParameterError);
}

TEST(SpaceSolver, MollifiedDeltaMatchesFundamental) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    const auto g = make_grid(512, 32.0, -16.0);
    const double eps = 0.2;
    const auto u0 = sample(g, [&](double x) { return gaussian(x, eps) / (eps * std::sqrt(2 * pi)); });
    const GridFunction v0(g);
    const double t = 1.5;
    const auto u = solve_space_fractional(u0, v0, {t}, p);
    // Direct inverse transform of e0_hat * mollifier transform.
    const auto xi = dual_frequencies(g);
    std::vector<cplx> spec(g.n());
    for (std::size_t k = 0; k < g.n(); ++k)
        spec[k] = e0_hat(xi[k], t, p) * std::exp(-0.5 * eps * eps * xi[k] * xi[k]) *
                  std::polar(1.0, xi[k] * g.origin()) / g.spacing();
    fft::inverse(spec);
    double err = 0, mx = 0;
    for (std::size_t j = 0; j < g.n(); ++j) {
        err = std::max(err, std::abs(u.at(0, j) - spec[j]));
        mx = std::max(mx, std::abs(spec[j]));
    }
    EXPECT_LT(err, 1e-9 * mx);
}

TEST(SpaceResidual, SmoothSolutionIsSmall) {
    for (double beta : {0.3, 0.5, 0.8, 1.0}) {
        const ModelParams p(0.0, beta, 1.0, 2.0);
        const auto g = make_grid(512, 40.0, -20.0);
        const auto u0 = sample(g, [](double x) { return gaussian(x, 1.0); });
        const auto v0 = sample(g, [](double x) { return x * gaussian(x, 1.5); });
        const auto u = solve_space_fractional(u0, v0, uniform_times(0.5, 1.5, 101), p);
        EXPECT_LT(residual_space_fractional(u, p), 1e-4) << beta;
    }
}

TEST(SpaceResidual, TrivialCases) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    const auto g = make_grid(16, 1.0, 0.0);
    Field zero(g, uniform_times(0.1, 0.5, 5));
    EXPECT_EQ(residual_space_fractional(zero, p), 0.0);
    Field lin(g, uniform_times(0.1, 0.5, 7));
    for (std::size_t i = 0; i < lin.nt(); ++i)
        for (std::size_t j = 0; j < g.n(); ++j) lin.at(i, j) = 2.0 * lin.times[i];
    EXPECT_LT(residual_space_fractional(lin, p), 1e-10);
    Field few(g, uniform_times(0.1, 0.4, 4));
    EXPECT_THROW(residual_space_fractional(few, p), ParameterError);
    Field at_zero(g, uniform_times(0.0, 0.4, 5));
    EXPECT_THROW(residual_space_fractional(at_zero, p), ParameterError);
}

TEST(SpaceResidual, DetectsWrongEquation) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0), q(0.0, 0.8, 1.0, 2.0);
    const auto g = make_grid(256, 40.0, -20.0);
    const auto u0 = sample(g, [](double x) { return gaussian(x, 1.0); });
    const auto u = solve_space_fractional(u0, GridFunction(g), uniform_times(0.5, 1.5, 51), p);
    EXPECT_GT(residual_space_fractional(u, q), 1e-2);
}

TEST(SpaceResidual, FundamentalSolutionAwayFromZero) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    const auto g = make_grid(1024, 64.0, -32.0);
    const double eps = 0.25;
    const auto u0 = sample(g, [&](double x) { return gaussian(x, eps) / (eps * std::sqrt(2 * pi)); });
    const auto u = solve_space_fractional(u0, GridFunction(g), uniform_times(1.0, 1.2, 201), p);
    EXPECT_LT(residual_space_fractional(u, p), 1e-4);
}

TEST(SpaceSolver, ProbePairingIsSmoothInTime) {
    // <u(t), phi> has refinement-stable centred differences up to order 4.
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    const auto g = make_grid(1024, 64.0, -32.0);
    const auto u0 = sample(g, [](double x) { return std::exp(-std::abs(x)); });
    const auto phi = sample(g, [](double x) { return gaussian(x - 1.0, 0.7); });
    auto pairing = [&](double t) {
        const auto u = solve_space_fractional(u0, GridFunction(g), {t}, p);
        cplx s = 0;
        for (std::size_t j = 0; j < g.n(); ++j) s += u.at(0, j) * phi.values[j];
        return s.real() * g.spacing();
    };
    const double t = 1.0;
    auto d4 = [&](double h) {
        return (pairing(t - 2 * h) - 4 * pairing(t - h) + 6 * pairing(t) - 4 * pairing(t + h) + pairing(t + 2 * h)) /
               std::pow(h, 4);
    };
    const double a = d4(0.04), b = d4(0.02);
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_LT(std::abs(a - b), 0.1 * std::max(std::abs(a), std::abs(b)) + 1e-8);
}

TEST(HalfWave, InitialSliceIsExact) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    const auto g = make_grid(64, 8.0, -4.0);
    const auto u0 = sample(g, [](double x) { return std::exp(-x * x) * (1 + x); });
    const auto u = half_wave_solve(u0, {0.0, 0.5}, p);
    for (std::size_t j = 0; j < g.n(); ++j) EXPECT_EQ(u.at(0, j), u0.values[j]);
}

TEST(HalfWave, PerModeOdeResidual) {
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    const auto g = make_grid(64, 8.0, -4.0);
    const auto u0 = sample(g, [](double x) { return std::exp(-x * x); });
    const double t = 1.0, h = 1e-4;
    const auto u = half_wave_solve(u0, {t - h, t, t + h}, p);
    const auto xi = dual_frequencies(g);
    const auto a = fft::forward_copy(u.row(0)), b = fft::forward_copy(u.row(1)), c = fft::forward_copy(u.row(2));
    double worst = 0, scale = 0;
    for (std::size_t k = 0; k < g.n(); ++k) {
        const cplx dt = (c[k] - a[k]) / (2 * h);
        worst = std::max(worst, std::abs(dt / cplx(0, 1) - dispersion(xi[k], p) * b[k]));
        scale = std::max(scale, std::abs(b[k]));
    }
    EXPECT_LT(worst, 1e-6 * scale);
}

TEST(HardyConfig, FormulasAndValidity) {
    HardyConfig c{3.0, 0.75};
    EXPECT_NEAR(c.threshold(), 2.5, 1e-15);
    EXPECT_NEAR(c.gamma_formula(), 0.25, 1e-15);
    EXPECT_NEAR(c.alpha_prime_formula(), 3.0, 1e-15);
    HardyConfig d{7.0, 0.9};
    EXPECT_NEAR(d.threshold(), 5.5, 1e-12);
    EXPECT_NEAR(d.gamma_formula(), 0.1875, 1e-12);
    HardyConfig bad{2.0, 0.75};
    EXPECT_THROW(bad.validate(), ValidityError);
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    EXPECT_THROW(hardy_profile(bad, p, make_grid(64, 2.0, -1.0)), ValidityError);
    EXPECT_THROW(hardy_profile(HardyConfig{7.0, 0.9}, p, make_grid(64, 2.0, -1.0)), ParameterError);
}

TEST(HardyFit, SyntheticPowerLaw) {
    // |x|^{-1/4} cos(c/x^3) is resolved on a fine grid over the fit window.
    const auto g = make_grid(1 << 20, 1.0, 0.0);
    const double c = 1e-2;
    const auto prof = sample(g, [&](double x) {
        if (x <= 0) return cplx(0.0);
        return cplx(std::pow(x, -0.25) * std::cos(c / (x * x * x)));
    });
    HardyConfig cfg{3.0, 0.75};
    cfg.fit_lo = 0.02;
    cfg.fit_hi = 0.05;
    const auto fit = hardy_exponent_fit(prof, cfg);
    EXPECT_NEAR(fit.gamma_est, 0.25, 0.02 * 0.25);
    EXPECT_NEAR(fit.alpha_prime_est, 3.0, 0.1 * 3.0);
    EXPECT_GE(fit.peaks, 6u);
}

TEST(HardyFit, TooFewPeaks) {
    const auto g = make_grid(256, 1.0, 0.0);
    const auto prof = sample(g, [](double x) { return std::exp(-x); });
    EXPECT_THROW(hardy_exponent_fit(prof, HardyConfig{}), InsufficientDataError);
}

TEST(HardyProfile, RefinementStable) {
    // Samples away from 0 move by less than 1% when the spectral range doubles.
    const HardyConfig cfg{3.0, 0.75};
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    const auto g = make_grid(256, 8.0, -4.0);
    const auto prof = hardy_profile(cfg, p, g);
    const auto finer = detail::hardy_samples(cfg.theta, cfg.sigma, p.b_beta(), cfg.eta_lo, cfg.eta_hi, g.origin(),
                                             g.spacing(), g.n(), 8);
    double mx = 0, diff = 0;
    for (std::size_t j = 0; j < g.n(); ++j) {
        mx = std::max(mx, std::abs(prof.values[j]));
        if (std::abs(g.x(j)) > 1) diff = std::max(diff, std::abs(prof.values[j] - finer[j]));
    }
    EXPECT_TRUE(std::isfinite(mx));
    EXPECT_LT(diff, 0.01 * mx);
}

TEST(HardyProfile, BoundedByKernelMass) {
    // |Q f| <= (1/2pi) * ||eta |xi|^-theta||_1 pointwise, a bound from the
    // integrability of the multiplier.
    const HardyConfig cfg{3.0, 0.75};
    const ModelParams p(0.0, 0.5, 1.0, 2.0);
    const auto g = make_grid(512, 1.0, -0.5);
    const auto prof = hardy_profile(cfg, p, g);
    double l1 = 0;
    const double dk = 1e-4;
    for (double k = cfg.eta_lo; k < 2000; k += dk) l1 += 2 * smooth_switch(k + dk / 2, cfg.eta_lo, cfg.eta_hi) *
                                                       std::pow(k + dk / 2, -cfg.theta) * dk;
    for (auto v : prof.values) EXPECT_LE(std::abs(v), l1 / (2 * pi) * 1.001);
}
