#include "specreg/baselines.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "specreg/error.hpp"
#include "specreg/random.hpp"

namespace specreg {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd standard_normal(int size, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    VectorXd z(size);
    for (int i = 0; i < size; ++i) z(i) = normal(rng);
    return z;
}

struct Gaussian {
    VectorXd mean;
    Eigen::LLT<MatrixXd> llt;  // of the precision
    double half_logdet = 0.0;  // log |precision|^{1/2}
};

Gaussian gaussian_from_precision(const MatrixXd& precision, const VectorXd& linear, const char* what) {
    Gaussian g;
    g.llt.compute(precision);
    if (g.llt.info() != Eigen::Success) {
        throw NumericError(std::string(what) + ": posterior precision is not positive definite");
    }
    g.mean = g.llt.solve(linear);
    g.half_logdet = g.llt.matrixLLT().diagonal().array().log().sum();
    return g;
}

VectorXd draw(const Gaussian& g, Rng& rng) {
    return g.mean + g.llt.matrixU().solve(standard_normal(static_cast<int>(g.mean.size()), rng));
}

double log_density(const Gaussian& g, const VectorXd& x) {
    const VectorXd u = g.llt.matrixU() * (x - g.mean);
    return g.half_logdet - 0.5 * u.squaredNorm();
}

void check_data(const RegressionDataset& data, int min_obs, const char* who) {
    data.validate();
    if (data.num_obs() < min_obs) {
        throw InvalidInput(std::string(who) + ": need at least " + std::to_string(min_obs) +
                           " observations, got " + std::to_string(data.num_obs()));
    }
}

double logit(double p) { return std::log(p / (1.0 - p)); }
double expit(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

double rw_forecast(const Eigen::Ref<const Eigen::VectorXd>& series, int k) {
    if (series.size() == 0) throw InvalidInput("rw_forecast: empty series");
    if (k < 1) throw InvalidInput("rw_forecast: horizon must be >= 1");
    return series(series.size() - 1);
}

Eigen::VectorXd ols_coefficients(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw InvalidInput("ols: X and y have different row counts");
    if (X.rows() < X.cols()) throw InvalidInput("ols: fewer observations than coefficients");
    Eigen::ColPivHouseholderQR<MatrixXd> qr(X);
    if (qr.rank() < X.cols()) {
        throw InvalidInput("ols: design matrix is rank deficient (rank " + std::to_string(qr.rank()) +
                           " < " + std::to_string(X.cols()) + ")");
    }
    const MatrixXd xtx = X.transpose() * X;
    return xtx.ldlt().solve(X.transpose() * y);
}

OlsFit ols_fit_forecast(const RegressionDataset& data) {
    data.validate();
    OlsFit fit;
    fit.beta = ols_coefficients(data.X, data.y);
    fit.forecasts = data.X_future.rows() > 0 ? VectorXd(data.X_future * fit.beta) : VectorXd();
    return fit;
}

void BaselineMcmcConfig::validate() const {
    if (iterations < 1 || burn_in < 0 || burn_in >= iterations) {
        throw InvalidInput("baseline sampler needs 0 <= burn_in < iterations");
    }
    if (!(prior_var_beta > 0.0) || !(a > 0.0) || !(b > 0.0) || !(proposal_scale > 0.0)) {
        throw InvalidInput("baseline sampler hyperparameters must be positive");
    }
}

Eigen::VectorXd bar1_phi_grid() {
    return VectorXd::LinSpaced(199, -0.99, 0.99);
}

Bar1Fit bar1_fit_forecast(const RegressionDataset& data, const BaselineMcmcConfig& config) {
    config.validate();
    check_data(data, data.num_covariates() + 3, "bar1");
    const int n = data.num_obs();
    const int p = data.num_covariates();
    const int horizons = static_cast<int>(data.X_future.rows());
    const VectorXd grid = bar1_phi_grid();
    Rng rng(derive_seed(config.seed, 0xba51));

    VectorXd beta = ols_coefficients(data.X, data.y);
    double phi = 0.0;
    double tau = 1.0;

    Bar1Fit fit;
    fit.forecasts = VectorXd::Zero(horizons);
    fit.beta_mean = VectorXd::Zero(p);
    const int kept = config.iterations - config.burn_in;

    for (int it = 0; it < config.iterations; ++it) {
        // beta | phi, tau on quasi-differenced data
        const MatrixXd Xs = data.X.bottomRows(n - 1) - phi * data.X.topRows(n - 1);
        const VectorXd ys = data.y.tail(n - 1) - phi * data.y.head(n - 1);
        const MatrixXd precision = tau * Xs.transpose() * Xs + MatrixXd::Identity(p, p) / config.prior_var_beta;
        beta = draw(gaussian_from_precision(precision, tau * Xs.transpose() * ys, "bar1 beta"), rng);

        const VectorXd u = data.y - data.X * beta;
        const VectorXd cur = u.tail(n - 1);
        const VectorXd lag = u.head(n - 1);

        // tau | beta, phi
        const double ssr = (cur - phi * lag).squaredNorm();
        std::gamma_distribution<double> gamma(config.a + 0.5 * (n - 1), 1.0 / (config.b + 0.5 * ssr));
        tau = gamma(rng);

        // phi | beta, tau on the grid
        const double s_cc = cur.squaredNorm();
        const double s_cl = cur.dot(lag);
        const double s_ll = lag.squaredNorm();
        VectorXd logw(grid.size());
        for (Eigen::Index g = 0; g < grid.size(); ++g) {
            const double f = grid(g);
            logw(g) = -0.5 * tau * (s_cc - 2.0 * f * s_cl + f * f * s_ll);
        }
        const double top = logw.maxCoeff();
        VectorXd w = (logw.array() - top).exp();
        std::discrete_distribution<int> pick(w.data(), w.data() + w.size());
        phi = grid(pick(rng));

        if (it >= config.burn_in) {
            fit.beta_mean += beta;
            fit.phi_mean += phi;
            fit.tau_mean += tau;
            const double u_last = u(n - 1);
            double power = 1.0;
            for (int j = 0; j < horizons; ++j) {
                power *= phi;
                fit.forecasts(j) += data.X_future.row(j).dot(beta) + power * u_last;
            }
        }
    }
    fit.beta_mean /= kept;
    fit.phi_mean /= kept;
    fit.tau_mean /= kept;
    fit.forecasts /= kept;
    return fit;
}

double arch1_log_likelihood(const Eigen::VectorXd& residual, double alpha0, double alpha1) {
    double ll = 0.0;
    for (Eigen::Index t = 1; t < residual.size(); ++t) {
        const double h = alpha0 + alpha1 * residual(t - 1) * residual(t - 1);
        ll -= 0.5 * (std::log(h) + residual(t) * residual(t) / h);
    }
    return ll;
}

Barch1Fit barch1_fit_forecast(const RegressionDataset& data, const BaselineMcmcConfig& config) {
    config.validate();
    check_data(data, data.num_covariates() + 3, "barch1");
    const int n = data.num_obs();
    const int p = data.num_covariates();
    Rng rng(derive_seed(config.seed, 0xba4c));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    const MatrixXd prior_precision = MatrixXd::Identity(p, p) / config.prior_var_beta;
    const auto log_prior_beta = [&](const VectorXd& b) { return -0.5 * b.squaredNorm() / config.prior_var_beta; };

    // WLS Gaussian proposal for beta built from the variances implied by `b`.
    const auto wls_proposal = [&](const VectorXd& b, double a0, double a1) {
        const VectorXd u = data.y - data.X * b;
        MatrixXd precision = prior_precision;
        VectorXd linear = VectorXd::Zero(p);
        for (int t = 1; t < n; ++t) {
            const double w = 1.0 / (a0 + a1 * u(t - 1) * u(t - 1));
            precision.noalias() += w * data.X.row(t).transpose() * data.X.row(t);
            linear.noalias() += w * data.y(t) * data.X.row(t).transpose();
        }
        return gaussian_from_precision(precision, linear, "barch1 beta");
    };

    VectorXd beta = ols_coefficients(data.X, data.y);
    VectorXd resid = data.y - data.X * beta;
    double alpha0 = std::max(resid.squaredNorm() / n * 0.5, 1e-6);
    double alpha1 = 0.5;
    double scale = config.proposal_scale;

    Barch1Fit fit;
    fit.beta_mean = VectorXd::Zero(p);
    int alpha_accepts = 0;
    int beta_accepts = 0;
    int window_accepts = 0;
    const int kept = config.iterations - config.burn_in;

    for (int it = 0; it < config.iterations; ++it) {
        // beta: independence-style proposal from the current WLS posterior
        const Gaussian q_cur = wls_proposal(beta, alpha0, alpha1);
        const VectorXd beta_new = draw(q_cur, rng);
        const VectorXd resid_new = data.y - data.X * beta_new;
        const Gaussian q_new = wls_proposal(beta_new, alpha0, alpha1);
        const double log_ratio_beta =
            arch1_log_likelihood(resid_new, alpha0, alpha1) + log_prior_beta(beta_new) -
            arch1_log_likelihood(resid, alpha0, alpha1) - log_prior_beta(beta) +
            log_density(q_new, beta) - log_density(q_cur, beta_new);
        const bool beta_ok = std::log(uniform(rng)) < log_ratio_beta;
        if (beta_ok) {
            beta = beta_new;
            resid = resid_new;
        }

        // (alpha0, alpha1) on (log, logit) with the Jacobian a0 a1 (1 - a1)
        const double x0 = std::log(alpha0) + scale * normal(rng);
        const double x1 = logit(alpha1) + scale * normal(rng);
        const double a0_new = std::exp(x0);
        const double a1_new = expit(x1);
        bool alpha_ok = false;
        if (a0_new > 0.0 && a1_new > 0.0 && a1_new < 1.0 && std::isfinite(a0_new)) {
            const double log_ratio =
                arch1_log_likelihood(resid, a0_new, a1_new) + std::log(a0_new) + std::log(a1_new) +
                std::log1p(-a1_new) - arch1_log_likelihood(resid, alpha0, alpha1) - std::log(alpha0) -
                std::log(alpha1) - std::log1p(-alpha1);
            alpha_ok = std::log(uniform(rng)) < log_ratio;
        }
        if (alpha_ok) {
            alpha0 = a0_new;
            alpha1 = a1_new;
        }

        if (it < config.burn_in) {
            window_accepts += alpha_ok ? 1 : 0;
            if ((it + 1) % 50 == 0) {
                const double rate = window_accepts / 50.0;
                if (rate < 0.25) scale *= 0.8;
                if (rate > 0.40) scale *= 1.25;
                window_accepts = 0;
            }
        } else {
            alpha_accepts += alpha_ok ? 1 : 0;
            beta_accepts += beta_ok ? 1 : 0;
            fit.beta_mean += beta;
            fit.alpha0_mean += alpha0;
            fit.alpha1_mean += alpha1;
        }
    }
    fit.beta_mean /= kept;
    fit.alpha0_mean /= kept;
    fit.alpha1_mean /= kept;
    fit.alpha_acceptance = static_cast<double>(alpha_accepts) / kept;
    fit.beta_acceptance = static_cast<double>(beta_accepts) / kept;
    fit.forecasts = data.X_future.rows() > 0 ? VectorXd(data.X_future * fit.beta_mean) : VectorXd();
    return fit;
}

}  // namespace specreg
