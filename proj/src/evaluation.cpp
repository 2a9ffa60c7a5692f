#include "specreg/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "specreg/error.hpp"
#include "specreg/forecast.hpp"
#include "specreg/parallel.hpp"

namespace specreg {

const char* to_string(ModelKind m) {
    switch (m) {
        case ModelKind::RW: return "RW";
        case ModelKind::OLS: return "OLS";
        case ModelKind::BAR1: return "BAR1";
        case ModelKind::BARCH1: return "BARCH1";
        case ModelKind::BFV: return "BFV";
        case ModelKind::BTV: return "BTV";
    }
    return "?";
}

ModelKind parse_model(const std::string& name) {
    std::string u;
    for (char ch : name) {
        if (ch != '(' && ch != ')') u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    }
    for (ModelKind m : {ModelKind::RW, ModelKind::OLS, ModelKind::BAR1, ModelKind::BARCH1, ModelKind::BFV,
                        ModelKind::BTV}) {
        if (u == to_string(m)) return m;
    }
    throw InvalidInput("unknown model '" + name + "' (expected RW, OLS, BAR1, BARCH1, BFV or BTV)");
}

void EvalPlan::validate(int panel_length) const {
    if (window < 1) throw InvalidInput("evaluation: window length must be positive");
    if (max_origin < 0) throw InvalidInput("evaluation: origins must be >= 0");
    if (horizons.empty()) throw InvalidInput("evaluation: no horizons");
    if (models.empty()) throw InvalidInput("evaluation: no models");
    for (int k : horizons) {
        if (k < 1) throw InvalidInput("evaluation: horizons must be >= 1");
        if (k >= window) throw InvalidInput("evaluation: horizon " + std::to_string(k) + " must be below T");
    }
    const int kmax = *std::max_element(horizons.begin(), horizons.end());
    const int need = max_origin + window + kmax;
    if (need > panel_length) {
        throw InvalidInput("evaluation plan infeasible: requires l + T + max(k) <= n, but " +
                           std::to_string(max_origin) + " + " + std::to_string(window) + " + " +
                           std::to_string(kmax) + " = " + std::to_string(need) + " > n = " +
                           std::to_string(panel_length));
    }
}

EvalWindow make_window(const Eigen::VectorXd& s, const Eigen::VectorXd& deviation, int origin, int window,
                       int horizon, const std::function<void(int)>& on_access) {
    if (horizon < 1 || horizon >= window) throw InvalidInput("make_window: need 1 <= k < T");
    if (origin < 0 || origin + window > s.size() || deviation.size() != s.size()) {
        throw InvalidInput("make_window: window exceeds the data");
    }
    // 1-based index t maps to position t - 1.
    const auto read_s = [&](int t) {
        if (on_access) on_access(t);
        return s(t - 1);
    };
    const auto read_z = [&](int t) {
        if (on_access) on_access(t);
        return deviation(t - 1);
    };
    const int first = origin + 1;
    const int last = origin + window;
    const int rows = window - horizon;

    EvalWindow w;
    w.data.y.resize(rows);
    w.data.X.resize(rows, 2);
    for (int i = 0; i < rows; ++i) {
        const int t = first + i;
        w.data.y(i) = read_s(t + horizon) - read_s(t);
        w.data.X(i, 0) = 1.0;
        w.data.X(i, 1) = read_z(t);
    }
    w.data.X_future.resize(horizon, 2);
    for (int j = 0; j < horizon; ++j) {
        w.data.X_future(j, 0) = 1.0;
        w.data.X_future(j, 1) = read_z(last - horizon + 1 + j);
    }
    w.base = read_s(last);
    return w;
}

ModelFit fit_model(ModelKind model, const RegressionDataset& data, const EvalSettings& settings,
                   std::uint64_t seed) {
    const auto horizons = data.X_future.rows();
    ModelFit fit;
    switch (model) {
        case ModelKind::RW:
            fit.forecasts = Eigen::VectorXd::Constant(horizons, rw_forecast(data.y, 1));
            return fit;
        case ModelKind::OLS: {
            OlsFit ols = ols_fit_forecast(data);
            fit.beta = std::move(ols.beta);
            fit.forecasts = std::move(ols.forecasts);
            return fit;
        }
        case ModelKind::BAR1: {
            BaselineMcmcConfig cfg = settings.baseline;
            cfg.seed = seed;
            Bar1Fit bar = bar1_fit_forecast(data, cfg);
            fit.beta = std::move(bar.beta_mean);
            fit.forecasts = std::move(bar.forecasts);
            return fit;
        }
        case ModelKind::BARCH1: {
            BaselineMcmcConfig cfg = settings.baseline;
            cfg.seed = seed;
            Barch1Fit barch = barch1_fit_forecast(data, cfg);
            fit.beta = std::move(barch.beta_mean);
            fit.forecasts = std::move(barch.forecasts);
            return fit;
        }
        case ModelKind::BFV:
        case ModelKind::BTV: {
            const ModelVariant variant =
                model == ModelKind::BFV ? ModelVariant::FixedVolatility : ModelVariant::TimeVaryingVolatility;
            SamplerConfig cfg = settings.sampler;
            cfg.seed = seed;
            const SamplerContext ctx(data, settings.hyper, variant);
            const PosteriorSamples samples = run_gibbs(ctx, cfg);
            fit.beta = samples.posterior_mean_beta();
            if (horizons > 0) fit.forecasts = forecast(samples, ctx, data.X_future).forecasts;
            return fit;
        }
    }
    throw InvalidInput("fit_model: unknown model");
}

double forecast_cell(ModelKind model, const EvalWindow& window, const EvalSettings& settings,
                     std::uint64_t cell_seed) {
    if (model == ModelKind::RW) return window.base;
    EvalSettings local = settings;
    local.sampler.threads = 1;
    const ModelFit fit = fit_model(model, window.data, local, cell_seed);
    return window.base + fit.forecasts(fit.forecasts.size() - 1);
}

MetricsReport summarize(const std::vector<EvalRecord>& records, const std::vector<ModelKind>& models,
                        const std::vector<int>& horizons) {
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
    MetricsReport report;
    for (ModelKind m : models) report.models.emplace_back(to_string(m));
    report.horizons = horizons;
    const auto rows = static_cast<Eigen::Index>(models.size());
    const auto cols = static_cast<Eigen::Index>(horizons.size());
    report.rmspe = Eigen::MatrixXd::Constant(rows, cols, kNaN);
    report.rwr = Eigen::MatrixXd::Constant(rows, cols, kNaN);
    report.counts = Eigen::MatrixXi::Zero(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            std::vector<double> f;
            std::vector<double> truth;
            std::vector<double> rw;
            for (const auto& rec : records) {
                if (!rec.ok || rec.model != models[r] || rec.horizon != horizons[c]) continue;
                f.push_back(rec.forecast);
                truth.push_back(rec.truth);
                rw.push_back(rec.rw_forecast);
            }
            if (f.empty()) continue;
            const auto n = static_cast<Eigen::Index>(f.size());
            const ForecastMetrics fm = forecast_metrics(Eigen::Map<Eigen::VectorXd>(f.data(), n),
                                                        Eigen::Map<Eigen::VectorXd>(truth.data(), n),
                                                        Eigen::Map<Eigen::VectorXd>(rw.data(), n));
            report.rmspe(r, c) = fm.rmspe;
            report.rwr(r, c) = fm.rwr;
            report.counts(r, c) = fm.count;
        }
    }
    report.ratio = ratio_table(report.rmspe);
    return report;
}

EvalResult run_evaluation(const FxPanel& panel, const EvalPlan& plan, const EvalSettings& settings) {
    plan.validate(panel.size());
    const Eigen::VectorXd z = panel.deviation();
    const Eigen::VectorXd& s = panel.s;

    struct Cell {
        ModelKind model;
        int model_index;
        int origin;
        int horizon;
    };
    std::vector<Cell> cells;
    for (std::size_t mi = 0; mi < plan.models.size(); ++mi) {
        for (int l = 0; l <= plan.max_origin; ++l) {
            for (int k : plan.horizons) cells.push_back({plan.models[mi], static_cast<int>(mi), l, k});
        }
    }

    EvalResult result;
    result.records.resize(cells.size());
    parallel_for(static_cast<int>(cells.size()), settings.threads, [&](int i) {
        const Cell& cell = cells[static_cast<std::size_t>(i)];
        EvalRecord& rec = result.records[static_cast<std::size_t>(i)];
        rec.model = cell.model;
        rec.origin = cell.origin;
        rec.horizon = cell.horizon;
        const EvalWindow w = make_window(s, z, cell.origin, plan.window, cell.horizon);
        rec.truth = s(cell.origin + plan.window + cell.horizon - 1);
        rec.rw_forecast = w.base;
        const std::uint64_t seed =
            derive_seed(settings.seed, static_cast<std::uint64_t>(cell.model),
                        static_cast<std::uint64_t>(cell.origin) * 1000u + static_cast<std::uint64_t>(cell.horizon));
        try {
            rec.forecast = forecast_cell(cell.model, w, settings, seed);
            if (!std::isfinite(rec.forecast)) throw NumericError("non-finite forecast");
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.forecast = std::numeric_limits<double>::quiet_NaN();
            rec.message = e.what();
        }
    });
    for (const auto& rec : result.records) {
        if (!rec.ok) {
            result.warnings.push_back(std::string(to_string(rec.model)) + " failed at origin " +
                                      std::to_string(rec.origin) + ", horizon " + std::to_string(rec.horizon) +
                                      ": " + rec.message);
        }
    }
    result.report = summarize(result.records, plan.models, plan.horizons);
    return result;
}

}  // namespace specreg
