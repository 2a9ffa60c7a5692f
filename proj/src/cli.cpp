#include "specreg/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "specreg/config.hpp"
#include "specreg/csv.hpp"
#include "specreg/error.hpp"
#include "specreg/forecast.hpp"
#include "specreg/report.hpp"
#include "specreg/study.hpp"

namespace specreg {
namespace {

namespace fs = std::filesystem;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
    std::string out_dir = "specreg_out";
    std::string data_path;
    std::string model;
    std::string in_dir;
    bool quiet = false;
};

AppConfig effective_config(const Options& opt) {
    AppConfig cfg = opt.config_path.empty() ? AppConfig() : AppConfig::load(opt.config_path);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.threads) cfg.threads = *opt.threads;
    if (!opt.data_path.empty()) cfg.data.dataset = opt.data_path;
    if (!opt.model.empty()) cfg.data.model = opt.model;
    cfg.validate();
    return cfg;
}

std::ostream& out(const Options& opt) {
    static std::ostringstream sink;
    if (opt.quiet) {
        sink.str({});
        return sink;
    }
    return std::cout;
}

struct LoadedData {
    RegressionDataset data;
    Eigen::VectorXd truth;  // future responses when known
    std::string label;
};

LoadedData load_or_simulate(const AppConfig& cfg) {
    LoadedData out;
    if (!cfg.data.dataset.empty()) {
        out.data = load_dataset(cfg.data.dataset, cfg.data.intercept);
        out.label = cfg.data.dataset.filename().string();
        return out;
    }
    DgpSpec spec;
    spec.volatility = cfg.simulation.settings.front().first;
    spec.error = cfg.simulation.settings.front().second;
    spec.T = cfg.simulation.T;
    spec.horizon = cfg.simulation.horizon;
    spec.seed = cfg.seed;
    SimulatedDataset sim = simulate(spec);
    out.data = std::move(sim.data);
    out.truth = std::move(sim.y_future);
    out.label = spec.label();
    return out;
}

void write_run_config(const fs::path& dir, const AppConfig& cfg) {
    write_text_file(dir / "run_config.json", cfg.to_json_text());
}

int cmd_simulate(const Options& opt) {
    const AppConfig cfg = effective_config(opt);
    const fs::path dir = opt.out_dir;
    const StudyResult result = run_study(cfg);
    write_text_file(dir / "simulation_ledger.csv", ledger_csv(result.ledger));
    write_text_file(dir / "simulation_summary.csv", summary_csv(result.summary));
    write_run_config(dir, cfg);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    out(opt) << summary_csv(result.summary);
    return 0;
}

int cmd_fit(const Options& opt) {
    const AppConfig cfg = effective_config(opt);
    const ModelKind model = parse_model(cfg.data.model);
    if (model != ModelKind::BFV && model != ModelKind::BTV) {
        throw InvalidInput("fit supports the BFV and BTV models; use forecast for " + std::string(to_string(model)));
    }
    const LoadedData loaded = load_or_simulate(cfg);
    const SamplerContext ctx(loaded.data, cfg.hyper,
                             model == ModelKind::BFV ? ModelVariant::FixedVolatility
                                                     : ModelVariant::TimeVaryingVolatility);
    SamplerConfig sampler = cfg.sampler;
    sampler.seed = cfg.seed;
    sampler.threads = cfg.threads;
    const PosteriorSamples samples = run_gibbs(ctx, sampler);

    const fs::path dir = opt.out_dir;
    std::ostringstream posterior;
    write_posterior_csv(samples, posterior);
    write_text_file(dir / "posterior_samples.csv", posterior.str());
    write_text_file(dir / "theta_curve.csv", curve_csv(theta_band(samples), "frequency"));
    write_text_file(dir / "sigma_curve.csv", curve_csv(log_variance_band(samples, ctx), "t"));
    write_run_config(dir, cfg);

    const Eigen::VectorXd beta = samples.posterior_mean_beta();
    out(opt) << "model " << to_string(model) << " on " << loaded.label << ", " << samples.total_draws()
              << " draws\n";
    for (Eigen::Index j = 0; j < beta.size(); ++j) out(opt) << "beta_" << j << " " << format_number(beta(j)) << '\n';
    return 0;
}

int cmd_forecast(const Options& opt) {
    const AppConfig cfg = effective_config(opt);
    const ModelKind model = parse_model(cfg.data.model);
    const LoadedData loaded = load_or_simulate(cfg);
    if (loaded.data.X_future.rows() == 0) throw InvalidInput("forecast: the dataset has no future rows");
    EvalSettings settings;
    settings.sampler = cfg.sampler;
    settings.sampler.threads = cfg.threads;
    settings.hyper = cfg.hyper;
    settings.baseline = cfg.baseline;
    const ModelFit fit = fit_model(model, loaded.data, settings, cfg.seed);

    std::string csv = "model,origin,horizon,forecast,truth,error\n";
    const int origin = loaded.data.num_obs();
    for (Eigen::Index k = 0; k < fit.forecasts.size(); ++k) {
        csv += std::string(to_string(model)) + ',' + std::to_string(origin) + ',' + std::to_string(k + 1) + ',' +
               format_number(fit.forecasts(k)) + ',';
        if (k < loaded.truth.size()) {
            csv += format_number(loaded.truth(k)) + ',' + format_number(fit.forecasts(k) - loaded.truth(k));
        } else {
            csv += ',';
        }
        csv += '\n';
    }
    write_text_file(fs::path(opt.out_dir) / "forecasts.csv", csv);
    write_run_config(opt.out_dir, cfg);
    out(opt) << csv;
    return 0;
}

int cmd_evaluate(const Options& opt) {
    const AppConfig cfg = effective_config(opt);
    FxPanel panel;
    if (cfg.data.panel.empty()) {
        SyntheticPanelSpec spec = cfg.data.synthetic;
        spec.seed = cfg.seed;
        panel = synthetic_panel(spec);
    } else {
        panel = load_panel(cfg.data.panel, cfg.data.currency);
    }
    panel = impute_panel(panel, cfg.impute_half_width);

    EvalSettings settings;
    settings.sampler = cfg.sampler;
    settings.hyper = cfg.hyper;
    settings.baseline = cfg.baseline;
    settings.seed = cfg.seed;
    settings.threads = cfg.threads;
    const EvalResult result = run_evaluation(panel, cfg.evaluation, settings);

    const fs::path dir = opt.out_dir;
    write_text_file(dir / "forecasts.csv", forecasts_csv(result.records));
    write_report(dir, result.report);
    write_text_file(dir / "metrics_long.csv", metrics_long_csv(result.report));
    write_run_config(dir, cfg);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    out(opt) << "RMSPE\n" << format_table(result.report.models, result.report.horizons, result.report.rmspe);
    return 0;
}

int cmd_report(const Options& opt) {
    const fs::path in = opt.in_dir.empty() ? fs::path(opt.out_dir) : fs::path(opt.in_dir);
    MetricsReport report = read_report(in);
    report.ratio = ratio_table(report.rmspe);
    const fs::path dir = opt.out_dir;
    write_report(dir, report);
    write_text_file(dir / "metrics_long.csv", metrics_long_csv(report));
    out(opt) << "RMSPE\n" << format_table(report.models, report.horizons, report.rmspe);
    out(opt) << "RMSPE ratio to best\n" << format_table(report.models, report.horizons, report.ratio);
    out(opt) << "RWr\n" << format_table(report.models, report.horizons, report.rwr);
    return 0;
}

int cmd_config(const Options& opt) {
    out(opt) << effective_config(opt).to_json_text();
    return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"Bayesian regression with spectrally modelled, time-varying errors"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--config", opt.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("--seed", opt.seed, "Master random seed");
    app.add_option("--threads", opt.threads, "Worker threads (default: SPECREG_THREADS or 1)");
    app.add_option("--out-dir", opt.out_dir, "Directory for output files")->capture_default_str();
    app.add_flag("--quiet", opt.quiet, "Do not print summaries to stdout");

    auto* simulate = app.add_subcommand("simulate", "Run the replicated simulation study");
    auto* fit = app.add_subcommand("fit", "Fit BFV or BTV to one dataset and dump posterior summaries");
    auto* forecast = app.add_subcommand("forecast", "Fit one model and forecast the future rows");
    auto* evaluate = app.add_subcommand("evaluate", "Rolling-origin evaluation on an exchange-rate panel");
    auto* report = app.add_subcommand("report", "Rebuild ratio tables from saved RMSPE tables");
    auto* config = app.add_subcommand("config", "Print the effective configuration");
    for (auto* sub : {fit, forecast}) {
        sub->add_option("--data", opt.data_path, "Regression CSV (column y plus covariates)");
        sub->add_option("--model", opt.model, "RW, OLS, BAR1, BARCH1, BFV or BTV");
    }
    report->add_option("--in", opt.in_dir, "Directory holding rmspe/rwr/ratio tables (default: --out-dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*simulate) return cmd_simulate(opt);
        if (*fit) return cmd_fit(opt);
        if (*forecast) return cmd_forecast(opt);
        if (*evaluate) return cmd_evaluate(opt);
        if (*report) return cmd_report(opt);
        if (*config) return cmd_config(opt);
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        if (!e.dump().empty()) std::cerr << e.dump() << '\n';
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace specreg
