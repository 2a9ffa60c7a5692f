#pragma once

// Simulation designs with known truth: y = X beta + sigma (.) e with
// beta = (1, 2, 3), X = (1, X1, X2), X1 ~ 0.5 N(0, 1) + 0.5 N(0, 2) (second
// component has variance 2), X2 ~ Exp(1).

#include <cstdint>
#include <string>

#include "specreg/dataset.hpp"
#include "specreg/random.hpp"
#include "specreg/spectral.hpp"

namespace specreg {

enum class VolatilityKind { Fixed, Sinusoidal };
enum class ErrorKind { AR2, ARMA11, ARCH1 };

const char* to_string(VolatilityKind v);
const char* to_string(ErrorKind e);
VolatilityKind parse_volatility(const std::string& s);
ErrorKind parse_error_kind(const std::string& s);

struct DgpSpec {
    VolatilityKind volatility = VolatilityKind::Fixed;
    ErrorKind error = ErrorKind::AR2;
    int T = 200;       // in-sample length
    int horizon = 5;   // extra points generated for out-of-sample checks
    std::uint64_t seed = 1;

    std::string label() const;  // e.g. "fixed-ar2"
};

inline constexpr int kBurnIn = 500;

struct SimulatedDataset {
    RegressionDataset data;  // first T points; X_future holds the next `horizon` rows
    Eigen::VectorXd y_future;
    Eigen::VectorXd true_beta;
    Eigen::MatrixXd X_all;   // (T + horizon) x 3
    Eigen::VectorXd y_all;
    Eigen::VectorXd sigma;   // sigma_t over all T + horizon points
    Eigen::VectorXd e;       // unit-variance error path
    SpectralCurve true_spectrum;  // normalized, on the T-point grid
};

/// sqrt((1 - a2) / (1 + a2) / ((1 - a2)^2 - a1^2)): the standard deviation of
/// an AR(2) driven by unit innovations.
double ar2_scaling_factor(double a1, double a2);

SimulatedDataset simulate(const DgpSpec& spec);

/// Unit-variance error path of length `length` after discarding kBurnIn draws.
Eigen::VectorXd simulate_errors(ErrorKind kind, int length, Rng& rng);

/// The printed densities with w in cycles (w in [0, 0.5]):
/// AR(2) 1/|1 - 0.5 e^{i2pi w} + 0.3 e^{i4pi w}|^2,
/// ARMA(1,1) |1 - 0.6 e^{i2pi w}|^2 / |1 - 0.5 e^{i2pi w}|^2, ARCH(1) 1.
double reference_spectral_density(ErrorKind kind, double w_cycles);

/// Reference density on the n-point grid, normalized so gamma(0) = 1.
SpectralCurve true_spectrum(ErrorKind kind, int n);
FullSpectrum true_full_spectrum(ErrorKind kind, int n);

/// sigma_t^2 = 0.5 sin(pi t / (N + 1)), t = 1..N.
Eigen::VectorXd sinusoidal_variance(int length);

}  // namespace specreg
