#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace specreg {

struct ParameterMetrics {
    Eigen::VectorXd bias;  // mean(estimate - truth) per coefficient
    Eigen::VectorXd rmse;  // sqrt(mean((estimate - truth)^2))
};

/// `estimates` is replicates x p; `truth` has length p.
ParameterMetrics parameter_metrics(const Eigen::MatrixXd& estimates, const Eigen::VectorXd& truth);

struct ForecastMetrics {
    int count = 0;
    double mspe = 0.0;
    double rmspe = 0.0;
    /// Share of instances with |model error| < |RW error|; ties lose.
    double rwr = 0.0;
};

/// Scores aligned forecasts against truths. `rw_forecasts` are the random-walk
/// forecasts of the same instances.
ForecastMetrics forecast_metrics(const Eigen::VectorXd& forecasts, const Eigen::VectorXd& truths,
                                 const Eigen::VectorXd& rw_forecasts);

double mspe(const Eigen::VectorXd& errors);
double rmspe(const Eigen::VectorXd& errors);
double random_walk_ratio(const Eigen::VectorXd& model_errors, const Eigen::VectorXd& rw_errors);

/// Divides every column by its minimum (rows are models, columns horizons).
Eigen::MatrixXd ratio_table(const Eigen::MatrixXd& rmspe);

struct MetricsReport {
    std::vector<std::string> models;
    std::vector<int> horizons;
    Eigen::MatrixXd rmspe;  // models x horizons
    Eigen::MatrixXd rwr;
    Eigen::MatrixXd ratio;
    Eigen::MatrixXi counts;

    bool operator==(const MetricsReport& other) const;
};

}  // namespace specreg
