#include "specreg/study.hpp"

#include <cmath>
#include <map>

#include "specreg/csv.hpp"
#include "specreg/metrics.hpp"
#include "specreg/parallel.hpp"

namespace specreg {
namespace {

struct Job {
    std::size_t setting;
    int replicate;
    std::size_t model;
};

struct JobOutput {
    std::vector<LedgerRow> rows;
    std::string warning;
};

}  // namespace

StudyResult run_study(const AppConfig& config) {
    config.validate();
    const SimulationPlan& plan = config.simulation;
    EvalSettings settings;
    settings.sampler = config.sampler;
    settings.sampler.threads = 1;
    settings.hyper = config.hyper;
    settings.baseline = config.baseline;

    std::vector<Job> jobs;
    for (std::size_t s = 0; s < plan.settings.size(); ++s) {
        for (int r = 1; r <= plan.replicates; ++r) {
            for (std::size_t m = 0; m < plan.models.size(); ++m) jobs.push_back({s, r, m});
        }
    }

    std::vector<JobOutput> outputs(jobs.size());
    parallel_for(static_cast<int>(jobs.size()), config.threads, [&](int i) {
        const Job& job = jobs[static_cast<std::size_t>(i)];
        DgpSpec spec;
        spec.volatility = plan.settings[job.setting].first;
        spec.error = plan.settings[job.setting].second;
        spec.T = plan.T;
        spec.horizon = plan.horizon;
        spec.seed = config.seed + static_cast<std::uint64_t>(job.replicate - 1);
        const ModelKind model = plan.models[job.model];
        const std::string label = spec.label();
        JobOutput& out = outputs[static_cast<std::size_t>(i)];
        try {
            const SimulatedDataset sim = simulate(spec);
            const std::uint64_t fit_seed =
                derive_seed(config.seed, static_cast<std::uint64_t>(job.setting) * 100000u +
                                             static_cast<std::uint64_t>(job.replicate),
                            static_cast<std::uint64_t>(model));
            const ModelFit fit = fit_model(model, sim.data, settings, fit_seed);
            for (Eigen::Index j = 0; j < fit.beta.size(); ++j) {
                out.rows.push_back({label, spec.seed, to_string(model), "beta_" + std::to_string(j), fit.beta(j)});
            }
            for (Eigen::Index k = 0; k < fit.forecasts.size(); ++k) {
                out.rows.push_back({label, spec.seed, to_string(model), "error_h" + std::to_string(k + 1),
                                    fit.forecasts(k) - sim.y_future(k)});
            }
        } catch (const std::exception& e) {
            out.warning = label + " seed " + std::to_string(spec.seed) + " " + to_string(model) + ": " + e.what();
        }
    });

    StudyResult result;
    for (auto& o : outputs) {
        for (auto& row : o.rows) result.ledger.push_back(std::move(row));
        if (!o.warning.empty()) result.warnings.push_back(std::move(o.warning));
    }

    // Summaries keyed in first-seen order of the ledger.
    const Eigen::VectorXd truth = Eigen::Vector3d(1.0, 2.0, 3.0);
    std::vector<std::string> order;
    std::map<std::string, std::pair<SummaryRow, std::vector<double>>> groups;
    for (const auto& row : result.ledger) {
        const std::string key = row.setting + "|" + row.model + "|" + row.quantity;
        auto [it, inserted] = groups.try_emplace(key);
        if (inserted) {
            order.push_back(key);
            it->second.first = {row.setting, row.model, row.quantity, 0, 0.0, 0.0};
        }
        it->second.second.push_back(row.value);
    }
    for (const auto& key : order) {
        auto& [summary, values] = groups[key];
        double target = 0.0;
        if (summary.quantity.rfind("beta_", 0) == 0) {
            const int j = std::stoi(summary.quantity.substr(5));
            target = j < truth.size() ? truth(j) : 0.0;
        }
        const Eigen::Map<const Eigen::VectorXd> v(values.data(), static_cast<Eigen::Index>(values.size()));
        const ParameterMetrics pm = parameter_metrics(Eigen::MatrixXd(v), Eigen::VectorXd::Constant(1, target));
        summary.count = static_cast<int>(values.size());
        summary.bias = pm.bias(0);
        summary.rmse = pm.rmse(0);
        result.summary.push_back(summary);
    }
    return result;
}

std::string ledger_csv(const std::vector<LedgerRow>& rows) {
    std::string out = "setting,seed,model,quantity,value\n";
    for (const auto& r : rows) {
        out += r.setting + ',' + std::to_string(r.seed) + ',' + r.model + ',' + r.quantity + ',' +
               format_number(r.value) + '\n';
    }
    return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "setting,model,quantity,count,bias,rmse\n";
    for (const auto& r : rows) {
        out += r.setting + ',' + r.model + ',' + r.quantity + ',' + std::to_string(r.count) + ',' +
               format_number(r.bias) + ',' + format_number(r.rmse) + '\n';
    }
    return out;
}

}  // namespace specreg
