#pragma once

// Competing forecasters. Each takes a regression dataset whose X_future rows
// are the covariates for steps 1..M past the sample and returns one forecast
// per future row.

#include <cstdint>

#include <Eigen/Core>

#include "specreg/dataset.hpp"

namespace specreg {

/// Driftless random walk: every horizon forecasts the last observation.
double rw_forecast(const Eigen::Ref<const Eigen::VectorXd>& series, int k);

/// Least-squares coefficients from the normal equations X'X b = X'y.
/// Throws InvalidInput when X is rank deficient.
Eigen::VectorXd ols_coefficients(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

struct OlsFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd forecasts;  // X_future beta
};

OlsFit ols_fit_forecast(const RegressionDataset& data);

struct BaselineMcmcConfig {
    int iterations = 3000;
    int burn_in = 1000;
    std::uint64_t seed = 1;
    double prior_var_beta = 100.0;
    double a = 0.01;  // innovation precision ~ Gamma(a, rate b)
    double b = 0.01;
    double proposal_scale = 0.3;  // BARCH(1) (log alpha0, logit alpha1) walk

    void validate() const;
};

/// y_t = x_t beta + u_t, u_t = phi u_{t-1} + eps_t, eps_t ~ N(0, 1/tau), with the
/// likelihood conditioned on the first observation. phi takes values on a
/// 199-point grid over (-0.99, 0.99) under a uniform prior.
struct Bar1Fit {
    Eigen::VectorXd forecasts;  // mean over draws of x_{T+j} beta + phi^j u_T
    Eigen::VectorXd beta_mean;
    double phi_mean = 0.0;
    double tau_mean = 0.0;
};

Bar1Fit bar1_fit_forecast(const RegressionDataset& data, const BaselineMcmcConfig& config);

/// Grid used for phi.
Eigen::VectorXd bar1_phi_grid();

/// y_t = x_t beta + u_t, u_t | past ~ N(0, alpha0 + alpha1 u_{t-1}^2), t = 2..T,
/// flat prior on alpha0 > 0 and uniform alpha1 on [0, 1).
struct Barch1Fit {
    Eigen::VectorXd forecasts;  // X_future times the posterior mean of beta
    Eigen::VectorXd beta_mean;
    double alpha0_mean = 0.0;
    double alpha1_mean = 0.0;
    double alpha_acceptance = 0.0;
    double beta_acceptance = 0.0;
};

Barch1Fit barch1_fit_forecast(const RegressionDataset& data, const BaselineMcmcConfig& config);

/// Conditional log likelihood of the ARCH(1) residual model, t = 2..T.
double arch1_log_likelihood(const Eigen::VectorXd& residual, double alpha0, double alpha1);

}  // namespace specreg
