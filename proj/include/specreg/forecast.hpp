#pragma once

// k-step-ahead point forecasts averaged over posterior draws:
//   yhat_{T+k} = mean_r [ X_{T+k} beta_r + sigma_{T+k,r} h_r' C_r^{-1} D_r^{-1} (y - X beta_r) ]
// with h_r(t) = gamma_r(T + k - t) the unit-variance autocorrelation implied by
// theta_r and C_r the correlation matrix. By default C_r is the exact
// Toeplitz matrix of the implied autocorrelations. The circulant operator used
// during estimation is available too, but it treats the residual as periodic,
// and for persistent errors the wrap-around from z_T to z_1 dominates h' C^{-1} z.

#include <Eigen/Core>

#include "specreg/sampler.hpp"

namespace specreg {

enum class ForecastSolve { Toeplitz, Circulant };

struct ForecastComponents {
    Vector regression;  // X_{T+k} beta, k = 1..M
    Vector correction;  // sigma_{T+k} h' C^{-1} D^{-1} r
};

struct ForecastResult {
    Vector forecasts;   // k = 1..M
    Vector regression;  // draw-averaged regression part
    Vector correction;  // draw-averaged correction part
};

/// Autocorrelations gamma(0..max_lag) implied by theta, with gamma(0) = 1.
Vector implied_autocorrelation(const Vector& theta, int n, int max_lag);

/// h' C^{-1} z scaled by the future volatility.
double correction_term(const Vector& h, const CirculantOperator& corr,
                       const Vector& standardized_residual, double future_sigma);

/// h' R^{-1} z scaled by the future volatility, R the Toeplitz matrix whose
/// first column is `autocorrelation` (length n).
double correction_term(const Vector& h, const Vector& autocorrelation,
                       const Vector& standardized_residual, double future_sigma);

/// Per-draw forecast pieces for horizons 1..X_future.rows().
ForecastComponents forecast_draw(const ChainState& draw, const SamplerContext& ctx,
                                 const Matrix& X_future, ForecastSolve solve = ForecastSolve::Toeplitz);

/// Posterior-averaged forecasts for horizons 1..X_future.rows().
ForecastResult forecast(const PosteriorSamples& samples, const SamplerContext& ctx,
                        const Matrix& X_future, ForecastSolve solve = ForecastSolve::Toeplitz);

}  // namespace specreg
