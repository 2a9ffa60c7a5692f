#include <gtest/gtest.h>

#include <cmath>

#include "specreg/baselines.hpp"
#include "specreg/dgp.hpp"
#include "specreg/error.hpp"
#include "support.hpp"

using namespace specreg;

namespace {

// y = 1 + 0.5 x + u, u an AR(1) with coefficient phi, or ARCH(1) when
// arch = true; the last `future` rows go to X_future.
RegressionDataset regression_with_errors(int T, int future, double phi, bool arch, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    const int n = T + future;
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd u(n);
    double prev = 0.0;
    for (int burn = 0; burn < 200; ++burn) {
        prev = arch ? std::sqrt(0.1 + 0.9 * prev * prev) * z(rng) : phi * prev + z(rng);
    }
    for (int t = 0; t < n; ++t) {
        X(t, 0) = 1.0;
        X(t, 1) = z(rng);
        prev = arch ? std::sqrt(0.1 + 0.9 * prev * prev) * z(rng) : phi * prev + z(rng);
        u(t) = prev;
    }
    const Eigen::VectorXd y = X * Eigen::Vector2d(1.0, 0.5) + u;
    RegressionDataset d;
    d.X = X.topRows(T);
    d.y = y.head(T);
    d.X_future = X.bottomRows(future);
    return d;
}

BaselineMcmcConfig quick(std::uint64_t seed) {
    BaselineMcmcConfig c;
    c.iterations = 2000;
    c.burn_in = 500;
    c.seed = seed;
    return c;
}

}  // namespace

TEST(RandomWalk, ForecastsLastValue) {
    const Eigen::Vector4d s(0.3, -1.0, 2.2, 1.5);
    for (int k : {1, 3, 6, 12}) EXPECT_EQ(rw_forecast(s, k), 1.5);
    const Eigen::VectorXd flat = Eigen::VectorXd::Constant(30, 4.0);
    for (int k = 1; k <= 5; ++k) EXPECT_EQ(rw_forecast(flat.head(20), k) - flat(19 + k), 0.0);
}

TEST(RandomWalk, OneStepMspeIsInnovationVariance) {
    constexpr int paths = 1000;
    constexpr double sd = 0.5;
    std::mt19937_64 rng(31);
    std::normal_distribution<double> z(0.0, sd);
    double sq = 0.0;
    for (int p = 0; p < paths; ++p) {
        Eigen::VectorXd s(51);
        s(0) = 0.0;
        for (int t = 1; t <= 50; ++t) s(t) = s(t - 1) + z(rng);
        const double err = rw_forecast(s.head(50), 1) - s(50);
        sq += err * err;
    }
    const double var = sd * sd;
    EXPECT_NEAR(sq / paths, var, 3.0 * var * std::sqrt(2.0 / paths));
}

TEST(Ols, NoiselessRecovery) {
    Eigen::MatrixXd X(25, 2);
    X.col(0).setOnes();
    X.col(1) = support::normal_vector(25, 3);
    const Eigen::VectorXd y = 0.1 + 0.5 * X.col(1).array();
    const Eigen::VectorXd b = ols_coefficients(X, y);
    EXPECT_NEAR(b(0), 0.1, 1e-10);
    EXPECT_NEAR(b(1), 0.5, 1e-10);
}

TEST(Ols, ThreePointHandExample) {
    // x = (0, 1, 3), y = (1, 2, 6): Sxy = 8, Sxx = 14 / 3, slope 12 / 7.
    const Eigen::Vector3d x(0.0, 1.0, 3.0);
    const Eigen::Vector3d y(1.0, 2.0, 6.0);
    const double xbar = x.mean();
    const double ybar = y.mean();
    const double sxy = ((x.array() - xbar) * (y.array() - ybar)).sum();
    const double sxx = (x.array() - xbar).square().sum();
    Eigen::MatrixXd X(3, 2);
    X << 1, 0, 1, 1, 1, 3;
    const Eigen::VectorXd b = ols_coefficients(X, y);
    EXPECT_NEAR(b(1), sxy / sxx, 1e-14);
    EXPECT_NEAR(b(0), ybar - (sxy / sxx) * xbar, 1e-14);
    EXPECT_NEAR(b(1), 12.0 / 7.0, 1e-14);
}

TEST(Ols, ShiftingRegressorMovesOnlyIntercept) {
    Eigen::MatrixXd X(40, 2);
    X.col(0).setOnes();
    X.col(1) = support::normal_vector(40, 5);
    const Eigen::VectorXd y = support::normal_vector(40, 6);
    const Eigen::VectorXd b = ols_coefficients(X, y);
    Eigen::MatrixXd shifted = X;
    shifted.col(1).array() += 2.5;
    const Eigen::VectorXd c = ols_coefficients(shifted, y);
    EXPECT_NEAR(c(1), b(1), 1e-12);
    EXPECT_NEAR(c(0), b(0) - 2.5 * b(1), 1e-12);
}

TEST(Ols, RankDeficientDesignRejected) {
    Eigen::MatrixXd X(10, 3);
    X.col(0).setOnes();
    X.col(1) = support::normal_vector(10, 1);
    X.col(2) = 2.0 * X.col(1);
    EXPECT_THROW(ols_coefficients(X, Eigen::VectorXd::Ones(10)), InvalidInput);
}

TEST(Ols, ForecastUsesFutureRows) {
    const RegressionDataset d = regression_with_errors(80, 4, 0.0, false, 3);
    const OlsFit fit = ols_fit_forecast(d);
    EXPECT_LT((fit.forecasts - d.X_future * fit.beta).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_EQ(fit.forecasts.size(), 4);
}

TEST(Bar1, IidErrorsGiveSmallPhi) {
    const RegressionDataset d = regression_with_errors(200, 3, 0.0, false, 11);
    const Bar1Fit fit = bar1_fit_forecast(d, quick(1));
    EXPECT_LT(std::abs(fit.phi_mean), 0.1);
    EXPECT_NEAR(fit.beta_mean(1), 0.5, 0.2);
}

TEST(Bar1, RecoversStrongAutocorrelation) {
    const RegressionDataset d = regression_with_errors(200, 3, 0.8, false, 12);
    const Bar1Fit fit = bar1_fit_forecast(d, quick(2));
    EXPECT_GT(fit.phi_mean, 0.6);
    EXPECT_LT(fit.phi_mean, 0.95);
    EXPECT_NEAR(fit.tau_mean, 1.0, 0.3);
}

TEST(Bar1, CorrectionDecaysWithHorizon) {
    const RegressionDataset d = regression_with_errors(200, 150, 0.8, false, 13);
    const Bar1Fit fit = bar1_fit_forecast(d, quick(3));
    const double far = fit.forecasts(149) - d.X_future.row(149).dot(fit.beta_mean);
    const double near = fit.forecasts(0) - d.X_future.row(0).dot(fit.beta_mean);
    // Posterior mean of phi^k u_T; the upper tail of phi decays slowest.
    EXPECT_GT(std::abs(near), 1e-2);
    EXPECT_LT(std::abs(far), 0.05 * std::abs(near));
}

TEST(Bar1, GridSpansOpenInterval) {
    const Eigen::VectorXd g = bar1_phi_grid();
    EXPECT_EQ(g.size(), 199);
    EXPECT_NEAR(g(0), -0.99, 1e-12);
    EXPECT_NEAR(g(198), 0.99, 1e-12);
}

TEST(Barch1, HomoskedasticErrorsGiveSmallAlpha1) {
    const RegressionDataset d = regression_with_errors(200, 2, 0.0, false, 21);
    const Barch1Fit fit = barch1_fit_forecast(d, quick(4));
    EXPECT_LT(fit.alpha1_mean, 0.3);
    EXPECT_GT(fit.alpha_acceptance, 0.05);
}

TEST(Barch1, RecoversStrongArch) {
    const RegressionDataset d = regression_with_errors(200, 2, 0.0, true, 22);
    const Barch1Fit fit = barch1_fit_forecast(d, quick(5));
    EXPECT_GT(fit.alpha1_mean, 0.5);
}

TEST(Barch1, ForecastIsPosteriorMeanRegression) {
    const RegressionDataset d = regression_with_errors(150, 5, 0.0, true, 23);
    const Barch1Fit fit = barch1_fit_forecast(d, quick(6));
    EXPECT_LT((fit.forecasts - d.X_future * fit.beta_mean).cwiseAbs().maxCoeff(), 1e-13);
}

// The 2 pi constant is dropped from the likelihood.
TEST(Barch1, LogLikelihoodMatchesDirectSum) {
    const Eigen::VectorXd r = support::normal_vector(30, 9);
    double direct = 0.0;
    for (int t = 1; t < 30; ++t) {
        const double h = 0.2 + 0.6 * r(t - 1) * r(t - 1);
        direct += -0.5 * std::log(h) - 0.5 * r(t) * r(t) / h;
    }
    EXPECT_NEAR(arch1_log_likelihood(r, 0.2, 0.6), direct, 1e-10);
}

TEST(BaselineConfig, Validation) {
    BaselineMcmcConfig c;
    c.burn_in = c.iterations;
    EXPECT_THROW(c.validate(), InvalidInput);
    c = BaselineMcmcConfig{};
    c.proposal_scale = -1.0;
    EXPECT_THROW(c.validate(), InvalidInput);
    EXPECT_NO_THROW(BaselineMcmcConfig{}.validate());
}

TEST(Baselines, DeterministicPerSeed) {
    const RegressionDataset d = regression_with_errors(100, 3, 0.5, false, 30);
    EXPECT_EQ(bar1_fit_forecast(d, quick(7)).forecasts, bar1_fit_forecast(d, quick(7)).forecasts);
    EXPECT_EQ(barch1_fit_forecast(d, quick(7)).forecasts, barch1_fit_forecast(d, quick(7)).forecasts);
}
