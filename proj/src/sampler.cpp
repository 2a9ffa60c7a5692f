#include "specreg/sampler.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/QR>

#include "specreg/error.hpp"
#include "specreg/parallel.hpp"

namespace specreg {
namespace {

constexpr double kEulerGamma = 0.57721566490153286;

Vector standard_normal(int size, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector z(size);
    for (int i = 0; i < size; ++i) z(i) = normal(rng);
    return z;
}

double draw_gamma(const GammaConditional& g, Rng& rng) {
    if (!(g.shape > 0.0) || !(g.rate > 0.0) || !std::isfinite(g.rate)) {
        throw NumericError("gamma conditional has shape " + std::to_string(g.shape) + ", rate " +
                           std::to_string(g.rate));
    }
    std::gamma_distribution<double> gamma(g.shape, 1.0 / g.rate);
    return gamma(rng);
}

Vector draw_gaussian(const GaussianConditional& g, Rng& rng, const char* what) {
    Eigen::LLT<Matrix> llt(g.precision);
    if (llt.info() != Eigen::Success) {
        std::ostringstream os;
        os << what << " posterior precision is not positive definite";
        std::ostringstream dump;
        dump << "precision diagonal: " << g.precision.diagonal().transpose();
        throw NumericError(os.str(), dump.str());
    }
    const Vector z = standard_normal(static_cast<int>(g.mean.size()), rng);
    return g.mean + llt.matrixU().solve(z);
}

Vector moving_average(const Vector& x, int window) {
    const int n = static_cast<int>(x.size());
    const int half = window / 2;
    Vector out(n);
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - half);
        const int hi = std::min(n - 1, i + half);
        out(i) = x.segment(lo, hi - lo + 1).mean();
    }
    return out;
}

void append_number(std::string& line, double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    line += buf;
}

}  // namespace

const char* to_string(ModelVariant v) {
    return v == ModelVariant::FixedVolatility ? "BFV" : "BTV";
}

ModelVariant parse_variant(const std::string& name) {
    std::string lower;
    for (char ch : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (lower == "bfv" || lower == "fixed") return ModelVariant::FixedVolatility;
    if (lower == "btv" || lower == "time-varying" || lower == "tv") return ModelVariant::TimeVaryingVolatility;
    throw InvalidInput("unknown model variant '" + name + "' (expected BFV or BTV)");
}

Vector default_rho_grid() {
    constexpr int kPoints = 50;
    Vector grid(kPoints);
    for (int i = 0; i < kPoints; ++i) grid(i) = std::pow(10.0, -1.0 + 3.0 * i / (kPoints - 1));
    return grid;
}

void Hyperparams::validate() const {
    if (!(sigma2_beta > 0.0) || !(sigma2_delta > 0.0)) throw InvalidInput("hyperparams: variances must be positive");
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !(d > 0.0)) {
        throw InvalidInput("hyperparams: Gamma parameters a, b, c, d must be positive");
    }
    if (rho_grid.size() == 0) throw InvalidInput("hyperparams: rho grid is empty");
    for (Eigen::Index i = 0; i < rho_grid.size(); ++i) {
        if (!(rho_grid(i) > 0.0)) throw InvalidInput("hyperparams: rho grid values must be positive");
    }
    if (num_basis < SplineBasis::kDegree + 1) throw InvalidInput("hyperparams: num_basis must be >= 4");
    if (!(kernel_jitter >= 0.0)) throw InvalidInput("hyperparams: kernel jitter must be >= 0");
}

Vector Hyperparams::prior_mean(int m) const {
    if (nu_vector) {
        if (nu_vector->size() != m) {
            throw InvalidInput("hyperparams: nu has " + std::to_string(nu_vector->size()) +
                               " entries, expected " + std::to_string(m));
        }
        return *nu_vector;
    }
    return Vector::Constant(m, nu);
}

std::string describe(const ChainState& s) {
    std::ostringstream os;
    os.precision(10);
    os << "beta: " << s.beta.transpose() << "\n"
       << "delta: " << s.delta.transpose() << "\n"
       << "theta: " << s.theta.transpose() << "\n"
       << "tau_eps: " << s.tau_eps << "  tau_theta: " << s.tau_theta
       << "  rho_theta: " << s.rho_theta << "\n";
    return os.str();
}

KernelCache::KernelCache(const Vector& frequencies, const Vector& rho_grid, double jitter)
    : dim_(static_cast<int>(frequencies.size())), rho_(rho_grid) {
    const int m = dim_;
    for (Eigen::Index l = 0; l < rho_grid.size(); ++l) {
        Matrix corr(m, m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                corr(i, j) = std::exp(-rho_grid(l) * std::abs(frequencies(i) - frequencies(j)));
            }
        }
        corr.diagonal().array() += jitter;
        Eigen::LLT<Matrix> llt(corr);
        if (llt.info() != Eigen::Success) {
            throw NumericError("kernel matrix for rho = " + std::to_string(rho_grid(l)) +
                               " is not positive definite after jitter");
        }
        const Matrix& lower = llt.matrixLLT();
        logdet_.push_back(2.0 * lower.diagonal().array().log().sum());
        inverse_.push_back(llt.solve(Matrix::Identity(m, m)));
        correlation_.push_back(std::move(corr));
    }
}

double KernelCache::quadratic_form(int l, const Vector& x) const {
    return x.dot(inverse_[l].selfadjointView<Eigen::Lower>() * x);
}

SamplerContext::SamplerContext(RegressionDataset data_in, Hyperparams hyper_in,
                               ModelVariant variant_in, MixtureTable table_in)
    : data(std::move(data_in)),
      hyper(std::move(hyper_in)),
      variant(variant_in),
      table(std::move(table_in)),
      grid(fourier_frequencies(static_cast<int>(data.y.size()))),
      basis(static_cast<int>(data.y.size()), hyper.num_basis) {
    data.validate();
    hyper.validate();
    table.validate();
    kernels = std::make_shared<const KernelCache>(grid.frequencies, hyper.rho_grid, hyper.kernel_jitter);
    nu = hyper.prior_mean(grid.m);
}

CirculantOperator correlation_operator(const Vector& theta, int n) {
    SpectralCurve curve{n, theta};
    return CirculantOperator(unit_diagonal_eigenvalues(full_grid(curve)));
}

Vector volatility(const ChainState& state, const SamplerContext& ctx) {
    if (ctx.variant == ModelVariant::FixedVolatility) return Vector::Ones(ctx.n());
    return (0.5 * (ctx.basis.design() * state.delta).array()).exp();
}

GaussianConditional beta_conditional(const ChainState& state, const SamplerContext& ctx,
                                     const CirculantOperator& corr) {
    const Vector inv_sigma = volatility(state, ctx).cwiseInverse();
    const Matrix xs = inv_sigma.asDiagonal() * ctx.data.X;
    const Vector ys = inv_sigma.cwiseProduct(ctx.data.y);
    const Matrix cinv_xs = corr.solve_columns(xs);

    GaussianConditional g;
    g.precision = state.tau_eps * (xs.transpose() * cinv_xs);
    g.precision = 0.5 * (g.precision + g.precision.transpose()).eval();
    g.precision.diagonal().array() += 1.0 / ctx.hyper.sigma2_beta;
    Vector rhs = state.tau_eps * (cinv_xs.transpose() * ys);
    rhs.array() += ctx.hyper.mu_beta / ctx.hyper.sigma2_beta;
    Eigen::LLT<Matrix> llt(g.precision);
    if (llt.info() != Eigen::Success) {
        throw NumericError("beta posterior precision is not positive definite", describe(state));
    }
    g.mean = llt.solve(rhs);
    return g;
}

Vector update_beta(const ChainState& state, const SamplerContext& ctx,
                   const CirculantOperator& corr, Rng& rng) {
    return draw_gaussian(beta_conditional(state, ctx, corr), rng, "beta");
}

GammaConditional tau_eps_conditional(const ChainState& state, const SamplerContext& ctx,
                                     const CirculantOperator& corr) {
    const Vector rs = (ctx.data.y - ctx.data.X * state.beta).cwiseQuotient(volatility(state, ctx));
    const double q = rs.dot(corr.solve(rs));
    return {ctx.hyper.a + 0.5 * ctx.n(), ctx.hyper.b + 0.5 * q};
}

double update_tau_eps(const ChainState& state, const SamplerContext& ctx,
                      const CirculantOperator& corr, Rng& rng) {
    return draw_gamma(tau_eps_conditional(state, ctx, corr), rng);
}

double delta_log_target(const Vector& delta, const ChainState& state,
                        const SamplerContext& ctx, const CirculantOperator& corr) {
    const Matrix& phi = ctx.basis.design();
    const Vector eta = phi * delta;
    const Vector rs = (ctx.data.y - ctx.data.X * state.beta).cwiseProduct((-0.5 * eta.array()).exp().matrix());
    const double q = rs.dot(corr.solve(rs));
    const Vector centred = phi * (delta.array() - ctx.hyper.mu_delta).matrix();
    return -0.5 * eta.sum() - 0.5 * state.tau_eps * q -
           centred.squaredNorm() / (2.0 * ctx.hyper.sigma2_delta);
}

DeltaMove update_delta(const ChainState& state, const SamplerContext& ctx,
                       const CirculantOperator& corr, double proposal_scale, Rng& rng) {
    if (proposal_scale == 0.0) return {state.delta, true};
    const Vector proposal = state.delta + proposal_scale * standard_normal(ctx.d(), rng);
    const double current = delta_log_target(state.delta, state, ctx, corr);
    const double candidate = delta_log_target(proposal, state, ctx, corr);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double log_u = std::log(unif(rng));
    if (std::isfinite(candidate) && log_u < candidate - current) return {proposal, true};
    return {state.delta, false};
}

Vector standardized_residual(const ChainState& state, const SamplerContext& ctx) {
    return std::sqrt(state.tau_eps) *
           (ctx.data.y - ctx.data.X * state.beta).cwiseQuotient(volatility(state, ctx));
}

Vector log_periodogram(const Vector& series) {
    const Periodogram pg = periodogram(series);
    return pg.values.cwiseMax(std::numeric_limits<double>::min()).array().log();
}

GaussianConditional theta_conditional(const Matrix& upsilon_inverse, const Vector& label_variance,
                                      const Vector& label_mean, const Vector& phi,
                                      const Vector& nu) {
    GaussianConditional g;
    g.precision = upsilon_inverse;
    g.precision.diagonal() += label_variance.cwiseInverse();
    const Vector rhs = (phi - label_mean - nu).cwiseQuotient(label_variance);
    Eigen::LLT<Matrix> llt(g.precision);
    if (llt.info() != Eigen::Success) throw NumericError("theta posterior precision is not positive definite");
    g.mean = llt.solve(rhs) + nu;
    return g;
}

Vector update_theta(const ChainState& state, const Vector& phi, const SamplerContext& ctx,
                    Rng& rng) {
    const int m = ctx.m();
    Vector v2(m);
    Vector kappa(m);
    for (int s = 0; s < m; ++s) {
        const auto& c = ctx.table.components[static_cast<std::size_t>(state.psi[static_cast<std::size_t>(s)])];
        v2(s) = c.v * c.v;
        kappa(s) = c.k;
    }
    const Matrix upsilon_inverse = state.tau_theta * ctx.kernels->inverse(state.rho_index);
    return draw_gaussian(theta_conditional(upsilon_inverse, v2, kappa, phi, ctx.nu), rng, "theta");
}

LabelVector update_labels(const ChainState& state, const Vector& phi, const SamplerContext& ctx,
                          Rng& rng) {
    return sample_labels(phi, state.theta, ctx.table, rng);
}

GammaConditional tau_theta_conditional(const ChainState& state, const SamplerContext& ctx) {
    const Vector centred = state.theta - ctx.nu;
    const double q = ctx.kernels->quadratic_form(state.rho_index, centred);
    return {ctx.hyper.c + 0.5 * ctx.m(), ctx.hyper.d + 0.5 * q};
}

double update_tau_theta(const ChainState& state, const SamplerContext& ctx, Rng& rng) {
    return draw_gamma(tau_theta_conditional(state, ctx), rng);
}

Vector rho_log_weights(const ChainState& state, const SamplerContext& ctx) {
    const KernelCache& k = *ctx.kernels;
    const Vector centred = state.theta - ctx.nu;
    Vector logw(k.size());
    for (int l = 0; l < k.size(); ++l) {
        logw(l) = -0.5 * k.logdet(l) - 0.5 * state.tau_theta * k.quadratic_form(l, centred);
    }
    const double top = logw.maxCoeff();
    if (!std::isfinite(top)) throw NumericError("rho weights are not finite", describe(state));
    const double log_norm = top + std::log((logw.array() - top).exp().sum());
    return logw.array() - log_norm;
}

int sample_log_categorical(const Vector& log_weights, Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    double cdf = 0.0;
    const auto size = static_cast<int>(log_weights.size());
    for (int l = 0; l < size; ++l) {
        cdf += std::exp(log_weights(l));
        if (u < cdf) return l;
    }
    int last = size - 1;
    while (last > 0 && !std::isfinite(log_weights(last))) --last;
    return last;
}

int update_rho_theta(const ChainState& state, const SamplerContext& ctx, Rng& rng) {
    return sample_log_categorical(rho_log_weights(state, ctx), rng);
}

void SamplerConfig::validate() const {
    if (chains < 1) throw InvalidInput("sampler: chains must be >= 1");
    if (iterations < 1) throw InvalidInput("sampler: iterations must be >= 1");
    if (retain < 1 || retain > iterations) {
        throw InvalidInput("sampler: retain must lie in [1, iterations], got " + std::to_string(retain));
    }
    if (!(proposal_scale >= 0.0)) throw InvalidInput("sampler: proposal scale must be >= 0");
    if (adapt_interval < 1) throw InvalidInput("sampler: adapt interval must be >= 1");
    if (!(target_accept_low < target_accept_high)) throw InvalidInput("sampler: empty acceptance target band");
}

std::size_t PosteriorSamples::total_draws() const {
    std::size_t total = 0;
    for (const auto& c : chains) total += c.draws.size();
    return total;
}

std::vector<const ChainState*> PosteriorSamples::all_draws() const {
    std::vector<const ChainState*> out;
    out.reserve(total_draws());
    for (const auto& c : chains) {
        for (const auto& s : c.draws) out.push_back(&s);
    }
    return out;
}

Vector PosteriorSamples::posterior_mean_beta() const {
    Vector mean = Vector::Zero(p);
    const auto draws = all_draws();
    for (const auto* s : draws) mean += s->beta;
    return mean / static_cast<double>(draws.size());
}

ChainState initial_state(const SamplerContext& ctx, int chain, Rng& rng) {
    ChainState s;
    s.beta = ctx.data.X.colPivHouseholderQr().solve(ctx.data.y);
    s.delta = Vector::Zero(ctx.d());

    const Vector resid = ctx.data.y - ctx.data.X * s.beta;
    const double sd = std::sqrt(resid.squaredNorm() / std::max(1, ctx.n() - 1));
    const Vector scaled = sd > 0.0 ? Vector(resid / sd) : resid;
    const Vector phi = log_periodogram(scaled);
    s.theta = moving_average(phi, 5).array() + kEulerGamma;

    if (chain > 0) {
        s.beta += 0.5 * standard_normal(ctx.p(), rng);
        s.theta += 0.5 * standard_normal(ctx.m(), rng);
    }
    s.psi = sample_labels(phi, s.theta, ctx.table, rng);
    s.tau_eps = 1.0;
    s.tau_theta = 1.0;
    s.rho_index = (ctx.kernels->size() - 1) / 2;
    s.rho_theta = ctx.kernels->rho(s.rho_index);
    return s;
}

bool gibbs_sweep(ChainState& state, const SamplerContext& ctx, double proposal_scale, Rng& rng) {
    try {
        const CirculantOperator corr = correlation_operator(state.theta, ctx.n());
        state.beta = update_beta(state, ctx, corr, rng);
        state.tau_eps = update_tau_eps(state, ctx, corr, rng);
        bool accepted = true;
        if (ctx.variant == ModelVariant::TimeVaryingVolatility) {
            DeltaMove move = update_delta(state, ctx, corr, proposal_scale, rng);
            state.delta = std::move(move.delta);
            accepted = move.accepted;
        }
        const Vector phi = log_periodogram(standardized_residual(state, ctx));
        state.psi = update_labels(state, phi, ctx, rng);
        state.theta = update_theta(state, phi, ctx, rng);
        state.tau_theta = update_tau_theta(state, ctx, rng);
        state.rho_index = update_rho_theta(state, ctx, rng);
        state.rho_theta = ctx.kernels->rho(state.rho_index);
        return accepted;
    } catch (const NumericError& e) {
        throw NumericError(e.what(), describe(state) + e.dump());
    }
}

ChainResult run_chain(const SamplerContext& ctx, const SamplerConfig& config, int chain) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(chain)));
    ChainState state = initial_state(ctx, chain, rng);
    const int burn = config.iterations - config.retain;
    const bool adapt = config.adapt && ctx.variant == ModelVariant::TimeVaryingVolatility;

    ChainResult result;
    result.draws.reserve(static_cast<std::size_t>(config.retain));
    double scale = config.proposal_scale;
    int window_accepts = 0;
    int window_size = 0;
    int retained_accepts = 0;
    for (int it = 0; it < config.iterations; ++it) {
        const bool accepted = gibbs_sweep(state, ctx, scale, rng);
        if (it < burn) {
            window_accepts += accepted ? 1 : 0;
            ++window_size;
            if (adapt && window_size == config.adapt_interval) {
                const double rate = static_cast<double>(window_accepts) / window_size;
                if (rate < config.target_accept_low) scale *= 0.8;
                if (rate > config.target_accept_high) scale *= 1.25;
                window_accepts = 0;
                window_size = 0;
            }
        } else {
            retained_accepts += accepted ? 1 : 0;
            result.draws.push_back(state);
        }
    }
    result.delta_acceptance = static_cast<double>(retained_accepts) / config.retain;
    result.proposal_scale = scale;
    return result;
}

PosteriorSamples run_gibbs(const SamplerContext& ctx, const SamplerConfig& config) {
    config.validate();
    PosteriorSamples out;
    out.variant = ctx.variant;
    out.iterations = config.iterations;
    out.retained = config.retain;
    out.n = ctx.n();
    out.p = ctx.p();
    out.d = ctx.d();
    out.m = ctx.m();
    out.chains.resize(static_cast<std::size_t>(config.chains));

    parallel_for(config.chains, config.threads, [&](int c) {
        out.chains[static_cast<std::size_t>(c)] = run_chain(ctx, config, c);
    });
    return out;
}

PosteriorSamples run_gibbs(const RegressionDataset& data, ModelVariant variant,
                           const Hyperparams& hyper, const SamplerConfig& config) {
    const SamplerContext ctx(data, hyper, variant);
    return run_gibbs(ctx, config);
}

void write_posterior_csv(const PosteriorSamples& samples, std::ostream& out) {
    std::string line = "chain";
    for (int j = 0; j < samples.p; ++j) line += ",beta_" + std::to_string(j);
    for (int b = 1; b <= samples.d; ++b) line += ",delta_" + std::to_string(b);
    for (int s = 1; s <= samples.m; ++s) line += ",theta_" + std::to_string(s);
    line += ",tau_eps,tau_theta,rho_theta\n";
    out << line;
    for (std::size_t c = 0; c < samples.chains.size(); ++c) {
        for (const auto& s : samples.chains[c].draws) {
            line = std::to_string(c);
            auto put = [&line](double v) {
                line += ',';
                append_number(line, v);
            };
            for (Eigen::Index j = 0; j < s.beta.size(); ++j) put(s.beta(j));
            for (Eigen::Index b = 0; b < s.delta.size(); ++b) put(s.delta(b));
            for (Eigen::Index k = 0; k < s.theta.size(); ++k) put(s.theta(k));
            put(s.tau_eps);
            put(s.tau_theta);
            put(s.rho_theta);
            line += '\n';
            out << line;
        }
    }
}

}  // namespace specreg
