#pragma once

// Rolling-origin evaluation. For origin l and horizon k every model is fitted on
// the window t = l+1..l+T (1-based) and forecasts s_{l+T+k}.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "specreg/baselines.hpp"
#include "specreg/metrics.hpp"
#include "specreg/panel.hpp"
#include "specreg/sampler.hpp"

namespace specreg {

enum class ModelKind { RW, OLS, BAR1, BARCH1, BFV, BTV };

const char* to_string(ModelKind m);
ModelKind parse_model(const std::string& name);  // any case

struct EvalPlan {
    int window = 320;                          // T
    int max_origin = 5;                        // l = 0..max_origin
    std::vector<int> horizons{1, 3, 6, 12};
    std::vector<ModelKind> models{ModelKind::RW, ModelKind::OLS, ModelKind::BFV, ModelKind::BTV};

    /// Throws InvalidInput unless l + T + max(k) <= n for the last origin.
    void validate(int panel_length) const;
};

struct EvalSettings {
    SamplerConfig sampler;  // chains, iterations, retain for BFV and BTV
    Hyperparams hyper;
    BaselineMcmcConfig baseline;
    std::uint64_t seed = 1;
    int threads = 1;  // cells evaluated concurrently
};

/// Fit data for one cell. Rows are t = l+1..l+T-k with response s_{t+k} - s_t;
/// X_future covers t = l+T-k+1..l+T so its last row predicts s_{l+T+k} - s_{l+T}.
struct EvalWindow {
    RegressionDataset data;
    double base = 0.0;  // s_{l+T}
};

/// Reads only s and f - s at indices l+1..l+T. `on_access`, when set, sees
/// every 1-based index read.
EvalWindow make_window(const Eigen::VectorXd& s, const Eigen::VectorXd& deviation, int origin, int window,
                       int horizon, const std::function<void(int)>& on_access = {});

struct EvalRecord {
    ModelKind model = ModelKind::RW;
    int origin = 0;
    int horizon = 0;
    double forecast = 0.0;
    double truth = 0.0;
    double rw_forecast = 0.0;  // s_{l+T}, the benchmark for RWr
    bool ok = true;
    std::string message;  // failure reason when !ok

    double error() const { return forecast - truth; }
};

struct EvalResult {
    std::vector<EvalRecord> records;  // ordered by model, origin, horizon
    MetricsReport report;
    std::vector<std::string> warnings;
};

struct ModelFit {
    Eigen::VectorXd beta;       // point estimate of the regression coefficients (empty for RW)
    Eigen::VectorXd forecasts;  // one per X_future row
};

/// Fits any model to a regression dataset and forecasts its X_future rows. The
/// random walk forecasts the last response at every horizon.
ModelFit fit_model(ModelKind model, const RegressionDataset& data, const EvalSettings& settings,
                   std::uint64_t seed);

/// Point forecast of s_{l+T+k} for one model on one window.
double forecast_cell(ModelKind model, const EvalWindow& window, const EvalSettings& settings,
                     std::uint64_t cell_seed);

EvalResult run_evaluation(const FxPanel& panel, const EvalPlan& plan, const EvalSettings& settings);

/// Aggregates records into RMSPE, RWr and ratio tables. Failed cells are
/// dropped. Rows for models without any completed cell hold NaN.
MetricsReport summarize(const std::vector<EvalRecord>& records, const std::vector<ModelKind>& models,
                        const std::vector<int>& horizons);

}  // namespace specreg
