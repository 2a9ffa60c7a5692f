#pragma once

// Five-component Gaussian mixture standing in for the law of
// xi = log I_n(w) - log lambda(w), i.e. the log of a unit exponential.

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "specreg/random.hpp"

namespace specreg {

struct MixtureComponent {
    double p = 0.0;  // weight
    double k = 0.0;  // mean offset
    double v = 1.0;  // standard deviation
};

struct MixtureTable {
    static constexpr int kComponents = 5;

    std::string version;
    std::array<MixtureComponent, kComponents> components{};

    /// Throws InvalidInput unless weights are non-negative and sum to one
    /// (1e-12) and every standard deviation is positive.
    void validate() const;

    /// The table shipped with the library (also in data/log_exp_mixture.json).
    static MixtureTable standard();

    /// Reads `{"version": ..., "components": [{"p":..,"k":..,"v":..} x5]}`.
    static MixtureTable load(const std::filesystem::path& path);
    static MixtureTable from_json_text(const std::string& text);
    std::string to_json_text() const;
};

/// Mixture component per Fourier frequency; values are 0-based component
/// indices in [0, 5).
using LabelVector = std::vector<int>;

double mixture_log_density(double xi, const MixtureTable& table);

/// Log of the normalized categorical p_l phi_{v_l}(residual - k_l), l = 0..4.
std::array<double, MixtureTable::kComponents> label_log_probabilities(double residual,
                                                                      const MixtureTable& table);

/// Draws psi_s independently for every frequency given phi_s - theta_s.
LabelVector sample_labels(const Eigen::Ref<const Eigen::VectorXd>& log_periodogram,
                          const Eigen::Ref<const Eigen::VectorXd>& log_spectrum,
                          const MixtureTable& table, Rng& rng);

double sample_mixture(const MixtureTable& table, Rng& rng);

struct MixtureDiagnostics {
    double mixture_mean = 0.0;
    double reference_mean = 0.0;  // Monte Carlo mean of log Exp(1)
    double mean_error = 0.0;      // mixture_mean + Euler-Mascheroni constant
    double ks_statistic = 0.0;    // two-sample Kolmogorov-Smirnov distance
};

/// Compares `draws` mixture samples against `draws` samples of log Exp(1).
MixtureDiagnostics validate_mixture(const MixtureTable& table, Rng& rng, int draws = 100000);

}  // namespace specreg
