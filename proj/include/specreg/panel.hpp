#pragma once

// Monthly exchange-rate panels and the monetary-model regression
//   s_{t+k} - s_t = alpha + beta (f_t - s_t) + u_{t+k},  f_t = m_t - m*_t - (y_t - y*_t).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "specreg/dataset.hpp"
#include "specreg/dgp.hpp"

namespace specreg {

struct FxPanel {
    std::string currency;
    std::vector<std::string> dates;  // yyyy-mm, strictly increasing
    Eigen::VectorXd s;       // log spot rate
    Eigen::VectorXd m;       // log money, home
    Eigen::VectorXd m_star;  // log money, foreign
    Eigen::VectorXd y;       // log output, home
    Eigen::VectorXd y_star;  // log output, foreign

    int size() const { return static_cast<int>(s.size()); }

    /// 0-based indices of missing cells per series, in column order
    /// s, m, m_star, y, y_star.
    std::vector<int> gaps(const std::string& column) const;
    bool complete() const;

    /// f_t - s_t for every t; requires a complete panel.
    Eigen::VectorXd deviation() const;
};

inline const std::vector<std::string>& panel_columns() {
    static const std::vector<std::string> names{"s", "m", "m_star", "y", "y_star"};
    return names;
}

/// Reads a CSV with header (date, s, m, m_star, y, y_star) in any column order.
/// An optional `currency` column filters rows when `currency` is non-empty.
/// Empty or NA cells become NaN and are left for imputation.
FxPanel load_panel(const std::filesystem::path& path, const std::string& currency = {});
FxPanel parse_panel(const std::string& csv_text, const std::string& currency = {},
                    const std::string& source = "<text>");

/// Replaces every listed gap by the mean of up to `half_width` observed values
/// on each side. Throws InvalidInput if a gap has no observed value on one side.
Eigen::VectorXd impute_neighborhood(const Eigen::VectorXd& series, const std::vector<int>& gaps,
                                    int half_width = 3);

/// Imputes every NaN cell of every series.
FxPanel impute_panel(const FxPanel& panel, int half_width = 3);

/// Response s_{t+k} - s_t for t = 1..n-k with design rows (1, f_t - s_t).
/// X_future holds the design rows for t = n-k+1..n, so its last row is the
/// k-step-ahead row for the final observation.
RegressionDataset build_regression(const FxPanel& panel, int k);

/// Synthetic panel following the monetary model: f_t - s_t is a stationary
/// AR(1), and s_{t+1} = s_t + alpha + beta (f_t - s_t) + scale sigma_{t+1} e_{t+1}
/// with e and sigma drawn from the given simulation design.
struct SyntheticPanelSpec {
    int length = 336;
    double alpha = 0.0;
    double beta = 0.2;
    double deviation_ar = 0.95;
    double deviation_sd = 0.3;  // innovation sd of f - s
    double noise_scale = 1.0;
    ErrorKind error = ErrorKind::AR2;
    VolatilityKind volatility = VolatilityKind::Sinusoidal;
    std::uint64_t seed = 1;
};

FxPanel synthetic_panel(const SyntheticPanelSpec& spec);

std::string panel_to_csv(const FxPanel& panel);

}  // namespace specreg
