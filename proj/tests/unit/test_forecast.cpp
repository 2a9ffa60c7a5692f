#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "specreg/dgp.hpp"
#include "specreg/error.hpp"
#include "specreg/forecast.hpp"
#include "support.hpp"

using namespace specreg;

namespace {

struct Fixture {
    SimulatedDataset sim;
    SamplerContext ctx;

    explicit Fixture(ModelVariant variant, int T = 60)
        : sim(simulate(DgpSpec{VolatilityKind::Sinusoidal, ErrorKind::AR2, T, 12, 5})),
          ctx(sim.data, Hyperparams{}, variant) {}

    ChainState draw(std::uint64_t seed) const {
        ChainState s;
        s.beta = Eigen::Vector3d(1.0, 2.0, 3.0) + 0.1 * support::normal_vector(3, seed);
        s.delta = 0.3 * support::normal_vector(ctx.d(), seed + 1);
        s.theta = 0.5 * support::normal_vector(ctx.m(), seed + 2) - Eigen::VectorXd::Constant(ctx.m(), 1.8);
        s.psi.assign(static_cast<std::size_t>(ctx.m()), 0);
        return s;
    }
};

PosteriorSamples pack(std::vector<ChainState> draws, ModelVariant variant) {
    PosteriorSamples s;
    s.variant = variant;
    ChainResult chain;
    chain.draws = std::move(draws);
    s.retained = static_cast<int>(chain.draws.size());
    s.chains.push_back(std::move(chain));
    return s;
}

}  // namespace

TEST(ImpliedAutocorrelation, UnitAtLagZeroAndZeroForWhiteNoise) {
    const Eigen::VectorXd flat = Eigen::VectorXd::Constant(29, -1.0);
    const Eigen::VectorXd rho = implied_autocorrelation(flat, 60, 80);
    EXPECT_EQ(rho.size(), 81);
    EXPECT_DOUBLE_EQ(rho(0), 1.0);
    EXPECT_LT(rho.tail(80).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Forecast, WhiteNoiseDrawsGiveRegressionPart) {
    const Fixture f(ModelVariant::TimeVaryingVolatility);
    std::vector<ChainState> draws;
    for (std::uint64_t r = 0; r < 4; ++r) {
        ChainState d = f.draw(10 * r);
        d.theta.setConstant(-0.7);
        draws.push_back(d);
    }
    const ForecastResult out = forecast(pack(draws, ModelVariant::TimeVaryingVolatility), f.ctx, f.sim.data.X_future);
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(12);
    for (const auto& d : draws) expected += f.sim.data.X_future * d.beta;
    expected /= 4.0;
    EXPECT_LT(out.correction.cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((out.forecasts - expected).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Forecast, ZeroResidualHasNoCorrection) {
    Fixture f(ModelVariant::TimeVaryingVolatility);
    ChainState d = f.draw(3);
    f.ctx.data.y = f.ctx.data.X * d.beta;
    const ForecastComponents c = forecast_draw(d, f.ctx, f.sim.data.X_future);
    EXPECT_LT(c.correction.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((c.regression - f.sim.data.X_future * d.beta).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Forecast, InvariantToDrawOrder) {
    const Fixture f(ModelVariant::TimeVaryingVolatility);
    std::vector<ChainState> draws;
    for (std::uint64_t r = 0; r < 6; ++r) draws.push_back(f.draw(7 * r + 1));
    const ForecastResult a = forecast(pack(draws, ModelVariant::TimeVaryingVolatility), f.ctx, f.sim.data.X_future);
    std::reverse(draws.begin(), draws.end());
    std::swap(draws[1], draws[4]);
    const ForecastResult b = forecast(pack(draws, ModelVariant::TimeVaryingVolatility), f.ctx, f.sim.data.X_future);
    EXPECT_LT((a.forecasts - b.forecasts).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Forecast, DoublingEveryVolatilityLeavesForecastUnchanged) {
    const Fixture f(ModelVariant::TimeVaryingVolatility);
    const ChainState d = f.draw(11);
    ChainState doubled = d;
    // Partition of unity: adding log 4 to every coefficient adds log 4 to eta,
    // which doubles sigma at every in-sample and future time.
    doubled.delta.array() += std::log(4.0);
    const ForecastComponents a = forecast_draw(d, f.ctx, f.sim.data.X_future);
    const ForecastComponents b = forecast_draw(doubled, f.ctx, f.sim.data.X_future);
    EXPECT_LT((a.regression - b.regression).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((a.correction - b.correction).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_GT(a.correction.cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Forecast, DoublingFutureVolatilityDoublesCorrection) {
    const Fixture f(ModelVariant::TimeVaryingVolatility);
    const ChainState d = f.draw(13);
    const int n = f.ctx.n();
    const CirculantOperator corr = correlation_operator(d.theta, n);
    const Eigen::VectorXd sigma = volatility(d, f.ctx);
    const Eigen::VectorXd z = (f.ctx.data.y - f.ctx.data.X * d.beta).cwiseQuotient(sigma);
    const Eigen::VectorXd gamma = implied_autocorrelation(d.theta, n, n + 1);
    Eigen::VectorXd h(n);
    for (int t = 1; t <= n; ++t) h(t - 1) = gamma(n + 2 - t);
    const double future = std::exp(0.5 * f.ctx.basis.row_at(n + 2).dot(d.delta));
    const double one = correction_term(h, corr, z, future);
    EXPECT_NEAR(correction_term(h, corr, z, 2.0 * future), 2.0 * one, 1e-14 * std::abs(one) + 1e-300);
    // Same number as the assembled per-draw forecast.
    EXPECT_NEAR(forecast_draw(d, f.ctx, f.sim.data.X_future, ForecastSolve::Circulant).correction(1), one, 1e-12);
    const double toep = correction_term(h, Eigen::VectorXd(gamma.head(n)), z, future);
    EXPECT_NEAR(correction_term(h, Eigen::VectorXd(gamma.head(n)), z, 2.0 * future), 2.0 * toep,
                1e-14 * std::abs(toep) + 1e-300);
    EXPECT_NEAR(forecast_draw(d, f.ctx, f.sim.data.X_future).correction(1), toep, 1e-12);
}

TEST(Forecast, ToeplitzCorrectionIsDenseConditionalExpectation) {
    const Fixture f(ModelVariant::TimeVaryingVolatility);
    const ChainState d = f.draw(21);
    const int n = f.ctx.n();
    const Eigen::VectorXd sigma = volatility(d, f.ctx);
    const Eigen::VectorXd z = (f.ctx.data.y - f.ctx.data.X * d.beta).cwiseQuotient(sigma);
    const Eigen::VectorXd gamma = implied_autocorrelation(d.theta, n, n + 11);
    Eigen::MatrixXd R(n, n);
    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) R(s, t) = gamma(std::abs(s - t));
    }
    const Eigen::VectorXd solved = R.lu().solve(z);
    const ForecastComponents c = forecast_draw(d, f.ctx, f.sim.data.X_future);
    for (int k = 1; k <= 12; ++k) {
        double dense = 0.0;
        for (int t = 1; t <= n; ++t) dense += gamma(n + k - t) * solved(t - 1);
        dense *= std::exp(0.5 * f.ctx.basis.row_at(n + k).dot(d.delta));
        EXPECT_NEAR(c.correction(k - 1), dense, 1e-10 * (1.0 + std::abs(dense))) << "k=" << k;
    }
}

TEST(Forecast, BfvUsesUnitFutureVolatility) {
    const Fixture f(ModelVariant::FixedVolatility);
    ChainState d = f.draw(17);
    const ForecastComponents a = forecast_draw(d, f.ctx, f.sim.data.X_future);
    d.delta.setConstant(5.0);
    const ForecastComponents b = forecast_draw(d, f.ctx, f.sim.data.X_future);
    EXPECT_EQ(a.correction, b.correction);
}

TEST(CorrectionTerm, MatchesDenseCirculantAlgebra) {
    // Three-point circulant with AR(1)-shaped eigenvalues, mean one.
    const double phi = 0.5;
    Eigen::Vector3d mu;
    for (int j = 0; j < 3; ++j) mu(j) = 1.0 / (1.0 + phi * phi - 2.0 * phi * std::cos(2.0 * support::kPi * j / 3));
    mu /= mu.mean();
    const CirculantOperator op(FullSpectrum{mu.array().log().matrix()});
    const Eigen::MatrixXd C = support::dense_circulant(mu);
    const Eigen::Vector3d h(phi * phi * phi, phi * phi, phi);
    const Eigen::Vector3d z(0.4, -1.1, 0.7);
    const double dense = 1.3 * h.dot(C.lu().solve(z));
    EXPECT_NEAR(correction_term(h, op, z, 1.3), dense, 1e-12);
    EXPECT_THROW(correction_term(Eigen::Vector2d(1.0, 1.0), op, z, 1.0), InvalidInput);
}

TEST(CorrectionTerm, MatchesDenseToeplitzAlgebra) {
    // AR(1) correlations: the exact predictor of e_{T+k} is phi^k e_T.
    const double phi = 0.5;
    const Eigen::Vector3d column(1.0, phi, phi * phi);
    const Eigen::Vector3d h(phi * phi * phi, phi * phi, phi);
    const Eigen::Vector3d z(0.4, -1.1, 0.7);
    EXPECT_NEAR(correction_term(h, Eigen::VectorXd(column), z, 1.3), 1.3 * phi * 0.7, 1e-14);
    EXPECT_THROW(correction_term(Eigen::Vector2d(1.0, 1.0), Eigen::VectorXd(column), z, 1.0), InvalidInput);
}

TEST(Forecast, CorrectionShrinksWithHorizon) {
    DgpSpec spec;
    spec.T = 200;
    spec.horizon = 12;
    spec.seed = 2;
    const SimulatedDataset sim = simulate(spec);
    const SamplerContext ctx(sim.data, Hyperparams{}, ModelVariant::FixedVolatility);
    SamplerConfig cfg;
    cfg.chains = 1;
    cfg.iterations = 600;
    cfg.retain = 200;
    cfg.seed = 3;
    const PosteriorSamples samples = run_gibbs(ctx, cfg);
    double k1 = 0.0;
    double k12 = 0.0;
    for (const ChainState* d : samples.all_draws()) {
        const ForecastComponents c = forecast_draw(*d, ctx, sim.data.X_future);
        k1 += std::abs(c.correction(0));
        k12 += std::abs(c.correction(11));
    }
    EXPECT_LE(k12, k1);
}

TEST(Forecast, RejectsMissingOrMisshapedCovariates) {
    const Fixture f(ModelVariant::TimeVaryingVolatility);
    const PosteriorSamples s = pack({f.draw(1)}, ModelVariant::TimeVaryingVolatility);
    EXPECT_THROW(forecast(s, f.ctx, Eigen::MatrixXd(0, 3)), InvalidInput);
    EXPECT_THROW(forecast(s, f.ctx, Eigen::MatrixXd::Ones(2, 2)), InvalidInput);
    EXPECT_THROW(forecast(pack({}, ModelVariant::TimeVaryingVolatility), f.ctx, f.sim.data.X_future),
                 InvalidInput);
}
