#include "specreg/forecast.hpp"

#include <cmath>
#include <string>

#include "specreg/error.hpp"

namespace specreg {

Vector implied_autocorrelation(const Vector& theta, int n, int max_lag) {
    const AutocovSequence acv = refined_autocov(full_grid(SpectralCurve{n, theta}), max_lag);
    return acv.gammas / acv.gammas(0);
}

double correction_term(const Vector& h, const CirculantOperator& corr,
                       const Vector& standardized_residual, double future_sigma) {
    if (h.size() != standardized_residual.size()) {
        throw InvalidInput("correction_term: h and residual lengths differ");
    }
    return future_sigma * h.dot(corr.solve(standardized_residual));
}

double correction_term(const Vector& h, const Vector& autocorrelation,
                       const Vector& standardized_residual, double future_sigma) {
    if (h.size() != standardized_residual.size() || autocorrelation.size() != h.size()) {
        throw InvalidInput("correction_term: h, autocorrelation and residual lengths differ");
    }
    return future_sigma * h.dot(toeplitz_solve(autocorrelation, standardized_residual));
}

ForecastComponents forecast_draw(const ChainState& draw, const SamplerContext& ctx,
                                 const Matrix& X_future, ForecastSolve solve) {
    const int n = ctx.n();
    const auto horizons = static_cast<int>(X_future.rows());
    if (horizons < 1) throw InvalidInput("forecast: no future covariate rows supplied");
    if (X_future.cols() != ctx.p()) {
        throw InvalidInput("forecast: future covariates have " + std::to_string(X_future.cols()) +
                           " columns, expected " + std::to_string(ctx.p()));
    }

    const Vector sigma = volatility(draw, ctx);
    const Vector standardized = (ctx.data.y - ctx.data.X * draw.beta).cwiseQuotient(sigma);
    const Vector gamma = implied_autocorrelation(draw.theta, n, n + horizons - 1);
    // The solve does not depend on k.
    const Vector solved = solve == ForecastSolve::Toeplitz
                              ? toeplitz_solve(gamma.head(n), standardized)
                              : correlation_operator(draw.theta, n).solve(standardized);

    ForecastComponents out;
    out.regression = X_future * draw.beta;
    out.correction.resize(horizons);
    Vector h(n);
    for (int k = 1; k <= horizons; ++k) {
        double future_sigma = 1.0;
        if (ctx.variant == ModelVariant::TimeVaryingVolatility) {
            future_sigma = std::exp(0.5 * ctx.basis.row_at(n + k).dot(draw.delta));
        }
        for (int t = 1; t <= n; ++t) h(t - 1) = gamma(n + k - t);
        out.correction(k - 1) = future_sigma * h.dot(solved);
    }
    return out;
}

ForecastResult forecast(const PosteriorSamples& samples, const SamplerContext& ctx,
                        const Matrix& X_future, ForecastSolve solve) {
    const auto draws = samples.all_draws();
    if (draws.empty()) throw InvalidInput("forecast: posterior sample is empty");
    const auto horizons = static_cast<int>(X_future.rows());
    ForecastResult out;
    out.regression = Vector::Zero(horizons);
    out.correction = Vector::Zero(horizons);
    for (const ChainState* d : draws) {
        const ForecastComponents c = forecast_draw(*d, ctx, X_future, solve);
        out.regression += c.regression;
        out.correction += c.correction;
    }
    const auto r = static_cast<double>(draws.size());
    out.regression /= r;
    out.correction /= r;
    out.forecasts = out.regression + out.correction;
    return out;
}

}  // namespace specreg
