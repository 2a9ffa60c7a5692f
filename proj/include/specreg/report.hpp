#pragma once

// Output files. Every number goes through format_number so files are
// byte-identical across runs with the same seed.

#include <filesystem>
#include <string>
#include <vector>

#include "specreg/evaluation.hpp"
#include "specreg/metrics.hpp"
#include "specreg/sampler.hpp"

namespace specreg {

/// rmspe_table.csv, rwr_table.csv, ratio_table.csv and count_table.csv, each
/// with header "model,k1,k3,..." and one row per model.
void write_report(const std::filesystem::path& dir, const MetricsReport& report);
MetricsReport read_report(const std::filesystem::path& dir);

std::string format_table(const std::vector<std::string>& models, const std::vector<int>& horizons,
                         const Eigen::MatrixXd& values);

/// Long format: model,origin,horizon,forecast,truth,error,status.
std::string forecasts_csv(const std::vector<EvalRecord>& records);

/// Long format: model,horizon,count,rmspe,rwr,ratio.
std::string metrics_long_csv(const MetricsReport& report);

struct CurveBand {
    Eigen::VectorXd x;
    Eigen::VectorXd mean;
    Eigen::VectorXd lower;  // pointwise 2.5% quantile
    Eigen::VectorXd upper;  // pointwise 97.5% quantile
};

/// Posterior mean and pointwise 95% band of the normalized log spectral
/// density (gamma(0) = 1) on the (0, 0.5) cycle axis.
CurveBand theta_band(const PosteriorSamples& samples);

/// Posterior mean and band of the error log variance log sigma_t^2 - log tau_eps
/// against t = 1..n.
CurveBand log_variance_band(const PosteriorSamples& samples, const SamplerContext& ctx);

std::string curve_csv(const CurveBand& band, const std::string& x_name);

/// Linear-interpolation quantile (type 7) of `values`.
double quantile(std::vector<double> values, double q);

}  // namespace specreg
