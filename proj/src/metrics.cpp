#include "specreg/metrics.hpp"

#include <cmath>
#include <limits>

#include "specreg/error.hpp"

namespace specreg {
namespace {

void require_same_length(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw InvalidInput(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                           std::to_string(b) + ")");
    }
}

bool same_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double x = a.data()[i];
        const double y = b.data()[i];
        if (!(x == y || (std::isnan(x) && std::isnan(y)))) return false;
    }
    return true;
}

}  // namespace

ParameterMetrics parameter_metrics(const Eigen::MatrixXd& estimates, const Eigen::VectorXd& truth) {
    require_same_length(estimates.cols(), truth.size(), "parameter_metrics");
    if (estimates.rows() == 0) throw InvalidInput("parameter_metrics: no replicates");
    const Eigen::MatrixXd dev = estimates.rowwise() - truth.transpose();
    ParameterMetrics out;
    out.bias = dev.colwise().mean().transpose();
    out.rmse = (dev.array().square().colwise().sum() / static_cast<double>(dev.rows())).sqrt().transpose();
    return out;
}

double mspe(const Eigen::VectorXd& errors) {
    if (errors.size() == 0) throw InvalidInput("mspe: no forecast errors");
    return errors.squaredNorm() / static_cast<double>(errors.size());
}

double rmspe(const Eigen::VectorXd& errors) { return std::sqrt(mspe(errors)); }

double random_walk_ratio(const Eigen::VectorXd& model_errors, const Eigen::VectorXd& rw_errors) {
    require_same_length(model_errors.size(), rw_errors.size(), "random_walk_ratio");
    if (model_errors.size() == 0) throw InvalidInput("random_walk_ratio: no forecast errors");
    int wins = 0;
    for (Eigen::Index i = 0; i < model_errors.size(); ++i) {
        if (std::abs(model_errors(i)) < std::abs(rw_errors(i))) ++wins;
    }
    return static_cast<double>(wins) / static_cast<double>(model_errors.size());
}

ForecastMetrics forecast_metrics(const Eigen::VectorXd& forecasts, const Eigen::VectorXd& truths,
                                 const Eigen::VectorXd& rw_forecasts) {
    require_same_length(forecasts.size(), truths.size(), "forecast_metrics");
    require_same_length(rw_forecasts.size(), truths.size(), "forecast_metrics");
    const Eigen::VectorXd errors = forecasts - truths;
    ForecastMetrics out;
    out.count = static_cast<int>(errors.size());
    out.mspe = mspe(errors);
    out.rmspe = std::sqrt(out.mspe);
    out.rwr = random_walk_ratio(errors, rw_forecasts - truths);
    return out;
}

Eigen::MatrixXd ratio_table(const Eigen::MatrixXd& rmspe) {
    Eigen::MatrixXd out(rmspe.rows(), rmspe.cols());
    for (Eigen::Index c = 0; c < rmspe.cols(); ++c) {
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index r = 0; r < rmspe.rows(); ++r) {
            if (std::isfinite(rmspe(r, c))) best = std::min(best, rmspe(r, c));
        }
        for (Eigen::Index r = 0; r < rmspe.rows(); ++r) {
            out(r, c) = std::isfinite(best) && best > 0.0 ? rmspe(r, c) / best
                                                          : std::numeric_limits<double>::quiet_NaN();
        }
    }
    return out;
}

bool MetricsReport::operator==(const MetricsReport& other) const {
    return models == other.models && horizons == other.horizons && same_matrix(rmspe, other.rmspe) &&
           same_matrix(rwr, other.rwr) && same_matrix(ratio, other.ratio) &&
           same_matrix(counts.cast<double>(), other.counts.cast<double>());
}

}  // namespace specreg
