#pragma once

// Gibbs sampler for y = X beta + sigma (.) e with a Gaussian-process prior on
// the log spectral density of e and a B-spline log-volatility.
//
// Error covariance: Sigma = D C D / tau_eps, where D = diag(sigma_t) and C is
// the circulant correlation matrix built from exp(theta) on the full Fourier
// grid, rescaled to a unit diagonal. Under the fixed-volatility variant D = I.
//
// Sweep order: beta, tau_eps, [delta], log-periodogram of the standardized
// residual, labels psi, theta, tau_theta, rho_theta.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "specreg/bspline.hpp"
#include "specreg/dataset.hpp"
#include "specreg/mixture.hpp"
#include "specreg/spectral.hpp"

namespace specreg {

enum class ModelVariant {
    FixedVolatility,        // BFV: delta frozen at zero
    TimeVaryingVolatility,  // BTV: delta sampled by random-walk MH
};

const char* to_string(ModelVariant v);
ModelVariant parse_variant(const std::string& name);  // "bfv" / "btv", any case

/// 50 log-spaced points on [0.1, 100].
Vector default_rho_grid();

struct Hyperparams {
    double mu_beta = 0.0;
    double sigma2_beta = 100.0;
    double mu_delta = 0.0;
    double sigma2_delta = 100.0;
    double a = 0.01;  // tau_eps ~ Gamma(a, rate b)
    double b = 0.01;
    double c = 0.01;  // tau_theta ~ Gamma(c, rate d)
    double d = 0.01;
    Vector rho_grid = default_rho_grid();
    /// Prior mean of theta; a constant unless `nu_vector` is set. The default is
    /// the log spectral density of unit-variance white noise, -log(2 pi).
    double nu = -1.8378770664093453;
    std::optional<Vector> nu_vector;
    int num_basis = 10;
    double kernel_jitter = 1e-8;

    void validate() const;
    Vector prior_mean(int m) const;
};

struct ChainState {
    Vector beta;
    Vector delta;
    Vector theta;
    LabelVector psi;
    double tau_eps = 1.0;
    double tau_theta = 1.0;
    double rho_theta = 1.0;
    int rho_index = 0;  // position of rho_theta in the grid
};

std::string describe(const ChainState& state);

/// Unit-scale exponential correlation matrices exp(-rho |w_i - w_j|) for every
/// grid value, with Cholesky factors, inverses and log determinants. Shared
/// read-only between chains.
class KernelCache {
public:
    KernelCache(const Vector& frequencies, const Vector& rho_grid, double jitter);

    int size() const { return static_cast<int>(rho_.size()); }
    int dim() const { return dim_; }
    double rho(int l) const { return rho_(l); }
    const Matrix& correlation(int l) const { return correlation_[l]; }
    const Matrix& inverse(int l) const { return inverse_[l]; }
    double logdet(int l) const { return logdet_[l]; }

    /// x' C_l^{-1} x
    double quadratic_form(int l, const Vector& x) const;

private:
    int dim_ = 0;
    Vector rho_;
    std::vector<Matrix> correlation_;
    std::vector<Matrix> inverse_;
    std::vector<double> logdet_;
};

/// Immutable problem description shared by all chains.
struct SamplerContext {
    SamplerContext(RegressionDataset data, Hyperparams hyper, ModelVariant variant,
                   MixtureTable table = MixtureTable::standard());

    RegressionDataset data;
    Hyperparams hyper;
    ModelVariant variant;
    MixtureTable table;
    FourierGrid grid;
    SplineBasis basis;
    std::shared_ptr<const KernelCache> kernels;
    Vector nu;

    int n() const { return data.num_obs(); }
    int p() const { return data.num_covariates(); }
    int m() const { return grid.m; }
    int d() const { return basis.num_basis(); }
};

/// Correlation operator C built from theta (unit diagonal).
CirculantOperator correlation_operator(const Vector& theta, int n);

/// sigma_t = exp(eta_t / 2) for the state's delta (ones under BFV).
Vector volatility(const ChainState& state, const SamplerContext& ctx);

struct GaussianConditional {
    Vector mean;
    Matrix precision;
};

struct GammaConditional {
    double shape = 0.0;
    double rate = 0.0;
    double mean() const { return shape / rate; }
    double variance() const { return shape / (rate * rate); }
};

/// beta | rest ~ N(mean, precision^{-1}) with
/// precision = X' Sigma^{-1} X + I / sigma2_beta,
/// mean = precision^{-1} (X' Sigma^{-1} y + mu_beta 1 / sigma2_beta).
GaussianConditional beta_conditional(const ChainState& state, const SamplerContext& ctx,
                                     const CirculantOperator& corr);
Vector update_beta(const ChainState& state, const SamplerContext& ctx,
                   const CirculantOperator& corr, Rng& rng);

/// tau_eps | rest ~ Gamma(a + n/2, b + r' (D C D)^{-1} r / 2).
GammaConditional tau_eps_conditional(const ChainState& state, const SamplerContext& ctx,
                                     const CirculantOperator& corr);
double update_tau_eps(const ChainState& state, const SamplerContext& ctx,
                      const CirculantOperator& corr, Rng& rng);

/// Log target of delta up to a constant: the Gaussian log likelihood of the
/// residual under Sigma(delta) plus the prior
/// -(delta - mu)' Phi' Phi (delta - mu) / (2 sigma2_delta).
double delta_log_target(const Vector& delta, const ChainState& state,
                        const SamplerContext& ctx, const CirculantOperator& corr);

struct DeltaMove {
    Vector delta;
    bool accepted = false;
};

/// Random-walk MH: delta' = delta + scale * z, z ~ N(0, I_d).
DeltaMove update_delta(const ChainState& state, const SamplerContext& ctx,
                       const CirculantOperator& corr, double proposal_scale, Rng& rng);

/// r_* = tau_eps^{1/2} D^{-1} (y - X beta).
Vector standardized_residual(const ChainState& state, const SamplerContext& ctx);

/// log I_n(w_j) of a series, j = 1..m; zero ordinates are floored.
Vector log_periodogram(const Vector& series);

/// theta | rest ~ N(nu_*, Upsilon_*), Upsilon_* = (Upsilon^{-1} + V^{-1})^{-1},
/// nu_* = Upsilon_* V^{-1} (phi - kappa - nu) + nu. Returned as mean/precision.
GaussianConditional theta_conditional(const Matrix& upsilon_inverse, const Vector& label_variance,
                                      const Vector& label_mean, const Vector& phi,
                                      const Vector& nu);
Vector update_theta(const ChainState& state, const Vector& phi, const SamplerContext& ctx,
                    Rng& rng);

LabelVector update_labels(const ChainState& state, const Vector& phi, const SamplerContext& ctx,
                          Rng& rng);

/// tau_theta | rest ~ Gamma(c + m/2, d + (theta - nu)' C_rho^{-1} (theta - nu) / 2).
GammaConditional tau_theta_conditional(const ChainState& state, const SamplerContext& ctx);
double update_tau_theta(const ChainState& state, const SamplerContext& ctx, Rng& rng);

/// Normalized log weights over the rho grid:
/// -log|Upsilon_l| / 2 - (theta - nu)' Upsilon_l^{-1} (theta - nu) / 2.
Vector rho_log_weights(const ChainState& state, const SamplerContext& ctx);
int update_rho_theta(const ChainState& state, const SamplerContext& ctx, Rng& rng);

/// Draws an index from normalized log weights.
int sample_log_categorical(const Vector& log_weights, Rng& rng);

struct SamplerConfig {
    int chains = 3;
    int iterations = 10000;
    int retain = 1000;  // per chain, taken from the end
    std::uint64_t seed = 1;
    int threads = 1;
    double proposal_scale = 0.1;
    bool adapt = true;
    int adapt_interval = 50;
    double target_accept_low = 0.25;
    double target_accept_high = 0.40;

    void validate() const;
};

struct ChainResult {
    std::vector<ChainState> draws;
    double delta_acceptance = 0.0;  // over retained iterations
    double proposal_scale = 0.0;    // frozen value used after burn-in
};

struct PosteriorSamples {
    ModelVariant variant = ModelVariant::FixedVolatility;
    int iterations = 0;
    int retained = 0;
    int n = 0;
    int p = 0;
    int d = 0;
    int m = 0;
    std::vector<ChainResult> chains;

    std::size_t total_draws() const;
    std::vector<const ChainState*> all_draws() const;
    Vector posterior_mean_beta() const;
};

/// Initial state of chain `chain` (0-based); chains after the first jitter
/// beta and theta by N(0, 0.25) noise.
ChainState initial_state(const SamplerContext& ctx, int chain, Rng& rng);

/// One full sweep in place; returns whether the delta move was accepted.
bool gibbs_sweep(ChainState& state, const SamplerContext& ctx, double proposal_scale, Rng& rng);

ChainResult run_chain(const SamplerContext& ctx, const SamplerConfig& config, int chain);

PosteriorSamples run_gibbs(const RegressionDataset& data, ModelVariant variant,
                           const Hyperparams& hyper, const SamplerConfig& config);
PosteriorSamples run_gibbs(const SamplerContext& ctx, const SamplerConfig& config);

/// Header: chain, beta_0..beta_{p-1}, delta_1..delta_d, theta_1..theta_m,
/// tau_eps, tau_theta, rho_theta.
void write_posterior_csv(const PosteriorSamples& samples, std::ostream& out);

}  // namespace specreg
