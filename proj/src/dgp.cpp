#include "specreg/dgp.hpp"

#include <cctype>
#include <cmath>
#include <complex>
#include <numbers>

#include "specreg/error.hpp"

namespace specreg {
namespace {

constexpr double kAr1 = 0.5;
constexpr double kAr2 = -0.3;
constexpr double kArmaAr = 0.5;
constexpr double kArmaMa = -0.6;
constexpr double kArchConst = 0.1;
constexpr double kArchSlope = 0.9;

std::string lowercase(const std::string& s) {
    std::string out;
    for (char ch : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    return out;
}

}  // namespace

const char* to_string(VolatilityKind v) { return v == VolatilityKind::Fixed ? "fixed" : "sinusoidal"; }

const char* to_string(ErrorKind e) {
    switch (e) {
        case ErrorKind::AR2: return "ar2";
        case ErrorKind::ARMA11: return "arma11";
        case ErrorKind::ARCH1: return "arch1";
    }
    return "?";
}

VolatilityKind parse_volatility(const std::string& s) {
    const std::string v = lowercase(s);
    if (v == "fixed") return VolatilityKind::Fixed;
    if (v == "sinusoidal" || v == "time-varying" || v == "sin") return VolatilityKind::Sinusoidal;
    throw InvalidInput("unknown volatility kind '" + s + "'");
}

ErrorKind parse_error_kind(const std::string& s) {
    const std::string e = lowercase(s);
    if (e == "ar2" || e == "ar(2)") return ErrorKind::AR2;
    if (e == "arma11" || e == "arma(1,1)") return ErrorKind::ARMA11;
    if (e == "arch1" || e == "arch(1)") return ErrorKind::ARCH1;
    throw InvalidInput("unknown error kind '" + s + "'");
}

std::string DgpSpec::label() const { return std::string(to_string(volatility)) + "-" + to_string(error); }

double ar2_scaling_factor(double a1, double a2) {
    return std::sqrt((1.0 - a2) / (1.0 + a2) / ((1.0 - a2) * (1.0 - a2) - a1 * a1));
}

Eigen::VectorXd simulate_errors(ErrorKind kind, int length, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const int total = length + kBurnIn;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(total);
    switch (kind) {
        case ErrorKind::AR2: {
            const double scale = 1.0 / ar2_scaling_factor(kAr1, kAr2);
            double prev1 = 0.0;
            double prev2 = 0.0;
            for (int t = 0; t < total; ++t) {
                e(t) = kAr1 * prev1 + kAr2 * prev2 + scale * normal(rng);
                prev2 = prev1;
                prev1 = e(t);
            }
            break;
        }
        case ErrorKind::ARMA11: {
            const double var = (1.0 + kArmaMa * kArmaMa + 2.0 * kArmaAr * kArmaMa) / (1.0 - kArmaAr * kArmaAr);
            const double scale = 1.0 / std::sqrt(var);
            double prev_e = 0.0;
            double prev_z = 0.0;
            for (int t = 0; t < total; ++t) {
                const double z = scale * normal(rng);
                e(t) = kArmaAr * prev_e + z + kArmaMa * prev_z;
                prev_e = e(t);
                prev_z = z;
            }
            break;
        }
        case ErrorKind::ARCH1: {
            double prev = 0.0;
            for (int t = 0; t < total; ++t) {
                const double h = kArchConst + kArchSlope * prev * prev;
                e(t) = std::sqrt(h) * normal(rng);
                prev = e(t);
            }
            break;
        }
    }
    return e.tail(length);
}

Eigen::VectorXd sinusoidal_variance(int length) {
    Eigen::VectorXd v(length);
    for (int t = 1; t <= length; ++t) v(t - 1) = 0.5 * std::sin(std::numbers::pi * t / (length + 1));
    return v;
}

SimulatedDataset simulate(const DgpSpec& spec) {
    if (spec.T < 50) throw InvalidInput("simulate: T must be >= 50, got " + std::to_string(spec.T));
    if (spec.horizon < 0) throw InvalidInput("simulate: horizon must be >= 0");
    const int total = spec.T + spec.horizon;
    Rng rng(derive_seed(spec.seed, 0x6467705ULL));

    std::normal_distribution<double> normal(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    std::bernoulli_distribution coin(0.5);

    SimulatedDataset out;
    out.true_beta = Eigen::Vector3d(1.0, 2.0, 3.0);
    out.X_all.resize(total, 3);
    for (int t = 0; t < total; ++t) {
        const double sd = coin(rng) ? 1.0 : std::numbers::sqrt2;
        out.X_all(t, 0) = 1.0;
        out.X_all(t, 1) = sd * normal(rng);
        out.X_all(t, 2) = expo(rng);
    }
    out.e = simulate_errors(spec.error, total, rng);
    out.sigma = spec.volatility == VolatilityKind::Fixed ? Eigen::VectorXd::Ones(total)
                                                         : Eigen::VectorXd(sinusoidal_variance(total).cwiseSqrt());
    out.y_all = out.X_all * out.true_beta + out.sigma.cwiseProduct(out.e);

    out.data.y = out.y_all.head(spec.T);
    out.data.X = out.X_all.topRows(spec.T);
    out.data.X_future = out.X_all.bottomRows(spec.horizon);
    out.y_future = out.y_all.tail(spec.horizon);
    out.true_spectrum = true_spectrum(spec.error, spec.T);
    return out;
}

double reference_spectral_density(ErrorKind kind, double w_cycles) {
    const std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi * w_cycles);
    switch (kind) {
        case ErrorKind::AR2: return 1.0 / std::norm(1.0 - 0.5 * z + 0.3 * z * z);
        case ErrorKind::ARMA11: return std::norm(1.0 - 0.6 * z) / std::norm(1.0 - 0.5 * z);
        case ErrorKind::ARCH1: return 1.0;
    }
    return 1.0;
}

FullSpectrum true_full_spectrum(ErrorKind kind, int n) {
    if (n < 3) throw InvalidInput("true_spectrum: grid too small");
    FullSpectrum full;
    full.log_values.resize(n);
    for (int j = 0; j < n; ++j) {
        full.log_values(j) = std::log(reference_spectral_density(kind, static_cast<double>(j) / n));
    }
    return autocov_normalize(full);
}

SpectralCurve true_spectrum(ErrorKind kind, int n) { return positive_half(true_full_spectrum(kind, n)); }

}  // namespace specreg
