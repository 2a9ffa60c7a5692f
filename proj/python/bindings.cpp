#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "specreg/baselines.hpp"
#include "specreg/config.hpp"
#include "specreg/dgp.hpp"
#include "specreg/error.hpp"
#include "specreg/evaluation.hpp"
#include "specreg/forecast.hpp"
#include "specreg/panel.hpp"
#include "specreg/report.hpp"
#include "specreg/sampler.hpp"
#include "specreg/spectral.hpp"

namespace py = pybind11;
using namespace specreg;

namespace {

RegressionDataset make_dataset(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                               const std::optional<Eigen::MatrixXd>& X_future) {
    RegressionDataset d;
    d.y = y;
    d.X = X;
    d.X_future = X_future.value_or(Eigen::MatrixXd(0, X.cols()));
    d.validate();
    return d;
}

// Draws stacked over chains: one row per retained draw.
py::dict samples_to_dict(const PosteriorSamples& s) {
    const auto draws = s.all_draws();
    const auto rows = static_cast<Eigen::Index>(draws.size());
    Eigen::MatrixXd beta(rows, s.p), delta(rows, s.d), theta(rows, s.m);
    Eigen::VectorXd tau_eps(rows), tau_theta(rows), rho(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        beta.row(r) = draws[r]->beta.transpose();
        delta.row(r) = draws[r]->delta.transpose();
        theta.row(r) = draws[r]->theta.transpose();
        tau_eps(r) = draws[r]->tau_eps;
        tau_theta(r) = draws[r]->tau_theta;
        rho(r) = draws[r]->rho_theta;
    }
    std::vector<double> acceptance;
    for (const auto& c : s.chains) acceptance.push_back(c.delta_acceptance);
    py::dict out;
    out["beta"] = beta;
    out["delta"] = delta;
    out["theta"] = theta;
    out["tau_eps"] = tau_eps;
    out["tau_theta"] = tau_theta;
    out["rho_theta"] = rho;
    out["delta_acceptance"] = acceptance;
    out["beta_mean"] = s.posterior_mean_beta();
    return out;
}

SamplerConfig sampler_config(int chains, int iterations, int retain, std::uint64_t seed, int threads) {
    SamplerConfig c;
    c.chains = chains;
    c.iterations = iterations;
    c.retain = retain;
    c.seed = seed;
    c.threads = threads;
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_specreg, m) {
    m.doc() = "Regression with spectrally modelled, time-varying errors";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    m.def("periodogram", [](const Eigen::VectorXd& x) {
        const Periodogram p = periodogram(x);
        return py::make_tuple(p.grid.frequencies, p.values);
    }, py::arg("series"), "Positive Fourier frequencies and periodogram ordinates.");

    m.def("true_log_spectrum", [](const std::string& error, int n) {
        return true_spectrum(parse_error_kind(error), n).log_values;
    }, py::arg("error"), py::arg("n"));

    m.def("ar2_scaling_factor", &ar2_scaling_factor, py::arg("a1"), py::arg("a2"));

    m.def("simulate", [](const std::string& volatility, const std::string& error, int T, int horizon,
                         std::uint64_t seed) {
        const SimulatedDataset s =
            simulate(DgpSpec{parse_volatility(volatility), parse_error_kind(error), T, horizon, seed});
        py::dict out;
        out["y"] = s.data.y;
        out["X"] = s.data.X;
        out["X_future"] = s.data.X_future;
        out["y_future"] = s.y_future;
        out["beta"] = s.true_beta;
        out["sigma"] = s.sigma;
        out["e"] = s.e;
        out["log_spectrum"] = s.true_spectrum.log_values;
        return out;
    }, py::arg("volatility") = "fixed", py::arg("error") = "ar2", py::arg("T") = 200, py::arg("horizon") = 5,
       py::arg("seed") = 1);

    m.def("fit", [](const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                    const std::optional<Eigen::MatrixXd>& X_future, const std::string& model, int chains,
                    int iterations, int retain, std::uint64_t seed, int threads) {
        const SamplerContext ctx(make_dataset(y, X, X_future), Hyperparams{}, parse_variant(model));
        const SamplerConfig cfg = sampler_config(chains, iterations, retain, seed, threads);
        PosteriorSamples samples;
        {
            py::gil_scoped_release release;
            samples = run_gibbs(ctx, cfg);
        }
        py::dict out = samples_to_dict(samples);
        const CurveBand theta = theta_band(samples);
        out["frequency"] = theta.x;
        out["log_spectrum_mean"] = theta.mean;
        out["log_variance_mean"] = log_variance_band(samples, ctx).mean;
        if (ctx.data.X_future.rows() > 0) {
            const ForecastResult f = forecast(samples, ctx, ctx.data.X_future);
            out["forecasts"] = f.forecasts;
            out["forecast_regression"] = f.regression;
            out["forecast_correction"] = f.correction;
        }
        return out;
    }, py::arg("y"), py::arg("X"), py::arg("X_future") = py::none(), py::arg("model") = "btv",
       py::arg("chains") = 3, py::arg("iterations") = 10000, py::arg("retain") = 1000, py::arg("seed") = 1,
       py::arg("threads") = 1,
       "Run the Gibbs sampler (model 'bfv' or 'btv') and return stacked draws.");

    m.def("forecast_baseline", [](const std::string& model, const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                                  const Eigen::MatrixXd& X_future, std::uint64_t seed) {
        EvalSettings settings;
        const ModelFit fit = fit_model(parse_model(model), make_dataset(y, X, X_future), settings, seed);
        return py::make_tuple(fit.beta, fit.forecasts);
    }, py::arg("model"), py::arg("y"), py::arg("X"), py::arg("X_future"), py::arg("seed") = 1,
       "Fit RW, OLS, BAR1, BARCH1, BFV or BTV with default settings; returns (beta, forecasts).");

    m.def("evaluate_synthetic", [](int length, int window, int origins, const std::vector<int>& horizons,
                                   const std::vector<std::string>& models, std::uint64_t seed) {
        SyntheticPanelSpec spec;
        spec.length = length;
        spec.seed = seed;
        EvalPlan plan;
        plan.window = window;
        plan.max_origin = origins;
        plan.horizons = horizons;
        plan.models.clear();
        for (const auto& name : models) plan.models.push_back(parse_model(name));
        EvalSettings settings;
        settings.seed = seed;
        settings.sampler.chains = 1;
        settings.sampler.iterations = 600;
        settings.sampler.retain = 200;
        EvalResult r;
        {
            py::gil_scoped_release release;
            r = run_evaluation(synthetic_panel(spec), plan, settings);
        }
        py::dict out;
        out["models"] = r.report.models;
        out["horizons"] = r.report.horizons;
        out["rmspe"] = r.report.rmspe;
        out["rwr"] = r.report.rwr;
        out["ratio"] = r.report.ratio;
        return out;
    }, py::arg("length") = 336, py::arg("window") = 300, py::arg("origins") = 5,
       py::arg("horizons") = std::vector<int>{1, 3}, py::arg("models") = std::vector<std::string>{"RW", "OLS"},
       py::arg("seed") = 1);
}
