#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Core>

namespace specreg {

/// y = X beta + sigma (.) e, with optional covariate rows for T+1..T+M.
struct RegressionDataset {
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    Eigen::MatrixXd X_future;  // M x p; may be empty

    int num_obs() const { return static_cast<int>(y.size()); }
    int num_covariates() const { return static_cast<int>(X.cols()); }

    /// Throws InvalidInput on shape mismatch or non-finite entries; the message
    /// names the first offending (1-based) row.
    void validate() const;
};

/// Reads a CSV with a `y` column; every other column is a covariate in file
/// order. Trailing rows with an empty `y` become X_future. Any non-finite or
/// missing value elsewhere is rejected with its line number.
RegressionDataset parse_dataset_csv(const std::string& text, bool intercept,
                                    const std::string& source = "<text>");
RegressionDataset load_dataset(const std::filesystem::path& path, bool intercept);

}  // namespace specreg
