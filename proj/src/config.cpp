#include "specreg/config.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

#include <json.hpp>

#include "specreg/csv.hpp"
#include "specreg/error.hpp"

namespace specreg {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw InvalidInput("config: '" + where + "' must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw InvalidInput("config: unknown key '" + it.key() + "' in " + where);
        }
    }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidInput("config: '" + where + "." + key + "' has the wrong type");
    }
}

std::filesystem::path resolve(const std::string& p, const std::filesystem::path& base) {
    if (p.empty()) return {};
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

std::vector<std::pair<VolatilityKind, ErrorKind>> all_settings() {
    std::vector<std::pair<VolatilityKind, ErrorKind>> out;
    for (VolatilityKind v : {VolatilityKind::Fixed, VolatilityKind::Sinusoidal}) {
        for (ErrorKind e : {ErrorKind::AR2, ErrorKind::ARMA11, ErrorKind::ARCH1}) out.emplace_back(v, e);
    }
    return out;
}

std::pair<VolatilityKind, ErrorKind> parse_setting(const std::string& label) {
    const auto dash = label.find('-');
    if (dash == std::string::npos) throw InvalidInput("config: setting '" + label + "' is not volatility-error");
    return {parse_volatility(label.substr(0, dash)), parse_error_kind(label.substr(dash + 1))};
}

std::vector<ModelKind> parse_models(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw InvalidInput("config: '" + where + "' must be a list");
    std::vector<ModelKind> out;
    for (const auto& m : arr) out.push_back(parse_model(m.get<std::string>()));
    return out;
}

json models_json(const std::vector<ModelKind>& models) {
    json arr = json::array();
    for (ModelKind m : models) arr.push_back(to_string(m));
    return arr;
}

}  // namespace

AppConfig::AppConfig() {
    simulation.settings = all_settings();
    threads = default_threads();
}

int default_threads() {
    const char* env = std::getenv("SPECREG_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 1024) return 1;
    return static_cast<int>(v);
}

AppConfig AppConfig::from_json_text(const std::string& text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("config: ") + e.what());
    }
    reject_unknown(root, {"seed", "threads", "sampler", "hyper", "baseline", "simulation", "evaluation", "data"},
                   "top level");
    AppConfig cfg;
    read(root, "seed", cfg.seed, "");
    read(root, "threads", cfg.threads, "");

    if (root.contains("sampler")) {
        const json& s = root["sampler"];
        reject_unknown(s, {"chains", "iterations", "retain", "proposal_scale", "adapt", "adapt_interval"},
                       "sampler");
        read(s, "chains", cfg.sampler.chains, "sampler");
        read(s, "iterations", cfg.sampler.iterations, "sampler");
        read(s, "retain", cfg.sampler.retain, "sampler");
        read(s, "proposal_scale", cfg.sampler.proposal_scale, "sampler");
        read(s, "adapt", cfg.sampler.adapt, "sampler");
        read(s, "adapt_interval", cfg.sampler.adapt_interval, "sampler");
    }
    if (root.contains("hyper")) {
        const json& h = root["hyper"];
        reject_unknown(h, {"mu_beta", "sigma2_beta", "mu_delta", "sigma2_delta", "a", "b", "c", "d", "nu",
                           "num_basis", "rho_min", "rho_max", "rho_points"},
                       "hyper");
        auto& hp = cfg.hyper;
        read(h, "mu_beta", hp.mu_beta, "hyper");
        read(h, "sigma2_beta", hp.sigma2_beta, "hyper");
        read(h, "mu_delta", hp.mu_delta, "hyper");
        read(h, "sigma2_delta", hp.sigma2_delta, "hyper");
        read(h, "a", hp.a, "hyper");
        read(h, "b", hp.b, "hyper");
        read(h, "c", hp.c, "hyper");
        read(h, "d", hp.d, "hyper");
        read(h, "nu", hp.nu, "hyper");
        read(h, "num_basis", hp.num_basis, "hyper");
        if (h.contains("rho_min") || h.contains("rho_max") || h.contains("rho_points")) {
            double lo = 0.1;
            double hi = 100.0;
            int points = 50;
            read(h, "rho_min", lo, "hyper");
            read(h, "rho_max", hi, "hyper");
            read(h, "rho_points", points, "hyper");
            if (!(lo > 0.0) || !(hi >= lo) || points < 1) throw InvalidInput("config: invalid rho grid");
            hp.rho_grid = points == 1 ? Vector::Constant(1, lo)
                                      : Vector((Vector::LinSpaced(points, std::log(lo), std::log(hi))).array().exp());
        }
    }
    if (root.contains("baseline")) {
        const json& b = root["baseline"];
        reject_unknown(b, {"iterations", "burn_in", "proposal_scale"}, "baseline");
        read(b, "iterations", cfg.baseline.iterations, "baseline");
        read(b, "burn_in", cfg.baseline.burn_in, "baseline");
        read(b, "proposal_scale", cfg.baseline.proposal_scale, "baseline");
    }
    if (root.contains("simulation")) {
        const json& s = root["simulation"];
        reject_unknown(s, {"replicates", "T", "horizon", "settings", "models"}, "simulation");
        read(s, "replicates", cfg.simulation.replicates, "simulation");
        read(s, "T", cfg.simulation.T, "simulation");
        read(s, "horizon", cfg.simulation.horizon, "simulation");
        if (s.contains("settings")) {
            cfg.simulation.settings.clear();
            for (const auto& label : s["settings"]) cfg.simulation.settings.push_back(parse_setting(label.get<std::string>()));
        }
        if (s.contains("models")) cfg.simulation.models = parse_models(s["models"], "simulation.models");
    }
    if (root.contains("evaluation")) {
        const json& e = root["evaluation"];
        reject_unknown(e, {"window", "origins", "horizons", "models", "impute_half_width"}, "evaluation");
        read(e, "window", cfg.evaluation.window, "evaluation");
        read(e, "origins", cfg.evaluation.max_origin, "evaluation");
        read(e, "horizons", cfg.evaluation.horizons, "evaluation");
        read(e, "impute_half_width", cfg.impute_half_width, "evaluation");
        if (e.contains("models")) cfg.evaluation.models = parse_models(e["models"], "evaluation.models");
    }
    if (root.contains("data")) {
        const json& d = root["data"];
        reject_unknown(d, {"panel", "currency", "dataset", "model", "intercept", "synthetic"}, "data");
        std::string panel;
        std::string dataset;
        read(d, "panel", panel, "data");
        read(d, "dataset", dataset, "data");
        cfg.data.panel = resolve(panel, base_dir);
        cfg.data.dataset = resolve(dataset, base_dir);
        read(d, "currency", cfg.data.currency, "data");
        read(d, "model", cfg.data.model, "data");
        read(d, "intercept", cfg.data.intercept, "data");
        if (d.contains("synthetic")) {
            const json& y = d["synthetic"];
            reject_unknown(y, {"length", "alpha", "beta", "deviation_ar", "deviation_sd", "noise_scale", "error",
                               "volatility"},
                           "data.synthetic");
            auto& sp = cfg.data.synthetic;
            read(y, "length", sp.length, "data.synthetic");
            read(y, "alpha", sp.alpha, "data.synthetic");
            read(y, "beta", sp.beta, "data.synthetic");
            read(y, "deviation_ar", sp.deviation_ar, "data.synthetic");
            read(y, "deviation_sd", sp.deviation_sd, "data.synthetic");
            read(y, "noise_scale", sp.noise_scale, "data.synthetic");
            if (y.contains("error")) sp.error = parse_error_kind(y["error"].get<std::string>());
            if (y.contains("volatility")) sp.volatility = parse_volatility(y["volatility"].get<std::string>());
        }
    }
    cfg.validate();
    return cfg;
}

AppConfig AppConfig::load(const std::filesystem::path& path) {
    return from_json_text(read_text_file(path), path.parent_path());
}

std::string AppConfig::to_json_text() const {
    json root;
    root["seed"] = seed;
    root["threads"] = threads;
    root["sampler"] = {{"chains", sampler.chains},
                       {"iterations", sampler.iterations},
                       {"retain", sampler.retain},
                       {"proposal_scale", sampler.proposal_scale},
                       {"adapt", sampler.adapt},
                       {"adapt_interval", sampler.adapt_interval}};
    root["hyper"] = {{"mu_beta", hyper.mu_beta}, {"sigma2_beta", hyper.sigma2_beta},
                     {"mu_delta", hyper.mu_delta}, {"sigma2_delta", hyper.sigma2_delta},
                     {"a", hyper.a}, {"b", hyper.b}, {"c", hyper.c}, {"d", hyper.d}, {"nu", hyper.nu},
                     {"num_basis", hyper.num_basis},
                     {"rho_min", hyper.rho_grid.minCoeff()}, {"rho_max", hyper.rho_grid.maxCoeff()},
                     {"rho_points", hyper.rho_grid.size()}};
    root["baseline"] = {{"iterations", baseline.iterations},
                        {"burn_in", baseline.burn_in},
                        {"proposal_scale", baseline.proposal_scale}};
    json settings = json::array();
    for (const auto& [v, e] : simulation.settings) settings.push_back(std::string(to_string(v)) + "-" + to_string(e));
    root["simulation"] = {{"replicates", simulation.replicates}, {"T", simulation.T},
                          {"horizon", simulation.horizon}, {"settings", settings},
                          {"models", models_json(simulation.models)}};
    root["evaluation"] = {{"window", evaluation.window}, {"origins", evaluation.max_origin},
                          {"horizons", evaluation.horizons}, {"models", models_json(evaluation.models)},
                          {"impute_half_width", impute_half_width}};
    root["data"] = {{"panel", data.panel.string()}, {"currency", data.currency},
                    {"dataset", data.dataset.string()}, {"model", data.model}, {"intercept", data.intercept},
                    {"synthetic", {{"length", data.synthetic.length}, {"alpha", data.synthetic.alpha},
                                   {"beta", data.synthetic.beta}, {"deviation_ar", data.synthetic.deviation_ar},
                                   {"deviation_sd", data.synthetic.deviation_sd},
                                   {"noise_scale", data.synthetic.noise_scale},
                                   {"error", to_string(data.synthetic.error)},
                                   {"volatility", to_string(data.synthetic.volatility)}}}};
    return root.dump(2) + "\n";
}

void AppConfig::validate() const {
    if (threads < 1) throw InvalidInput("config: threads must be >= 1");
    sampler.validate();
    hyper.validate();
    baseline.validate();
    if (simulation.replicates < 1) throw InvalidInput("config: simulation.replicates must be >= 1");
    if (simulation.T < 50) throw InvalidInput("config: simulation.T must be >= 50");
    if (simulation.horizon < 1) throw InvalidInput("config: simulation.horizon must be >= 1");
    if (simulation.settings.empty()) throw InvalidInput("config: simulation.settings is empty");
    if (impute_half_width < 1) throw InvalidInput("config: evaluation.impute_half_width must be >= 1");
    parse_model(data.model);
}

}  // namespace specreg
