#pragma once

// Run configuration, read from a JSON file. Every key is optional; unknown keys
// are rejected so that typos do not silently fall back to defaults. The full
// grammar with defaults is documented in README.md.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "specreg/baselines.hpp"
#include "specreg/dgp.hpp"
#include "specreg/evaluation.hpp"
#include "specreg/panel.hpp"
#include "specreg/sampler.hpp"

namespace specreg {

struct SimulationPlan {
    int replicates = 100;  // seeds 1..replicates
    int T = 200;
    int horizon = 5;
    std::vector<std::pair<VolatilityKind, ErrorKind>> settings;  // default: all six
    std::vector<ModelKind> models{ModelKind::BFV, ModelKind::BTV, ModelKind::OLS, ModelKind::BAR1,
                                  ModelKind::BARCH1};
};

struct DataConfig {
    std::filesystem::path panel;    // evaluate: panel CSV; empty means a synthetic panel
    std::string currency;
    SyntheticPanelSpec synthetic;
    std::filesystem::path dataset;  // fit / forecast: regression CSV; empty means simulate
    std::string model = "BTV";      // fit / forecast
    bool intercept = true;          // prepend a column of ones to dataset covariates
};

struct AppConfig {
    std::uint64_t seed = 1;
    int threads = 1;
    SamplerConfig sampler;
    Hyperparams hyper;
    BaselineMcmcConfig baseline;
    SimulationPlan simulation;
    EvalPlan evaluation;
    int impute_half_width = 3;
    DataConfig data;

    AppConfig();

    /// Relative paths in the text resolve against `base_dir`.
    static AppConfig from_json_text(const std::string& text, const std::filesystem::path& base_dir = {});
    static AppConfig load(const std::filesystem::path& path);
    std::string to_json_text() const;

    void validate() const;
};

/// Thread count from SPECREG_THREADS, or 1 when unset or invalid.
int default_threads();

}  // namespace specreg
