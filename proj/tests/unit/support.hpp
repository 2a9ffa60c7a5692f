#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace support {

inline constexpr double kPi = std::numbers::pi;

inline Eigen::VectorXd normal_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = z(rng);
    return v;
}

// Dense circulant with eigenvalues mu (full grid, index j <-> w_j = 2 pi j / n).
inline Eigen::MatrixXd dense_circulant(const Eigen::VectorXd& mu) {
    const int n = static_cast<int>(mu.size());
    Eigen::MatrixXd c(n, n);
    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += mu(j) * std::cos(2.0 * kPi * j * (s - t) / n);
            c(s, t) = acc / n;
        }
    }
    return c;
}

// Full-grid eigenvalues from a positive-half log curve, scaled to mean one:
// negative frequencies mirror, w = 0 and w = pi copy their nearest neighbour.
inline Eigen::VectorXd unit_mean_eigenvalues(const Eigen::VectorXd& theta, int n) {
    const int m = (n - 1) / 2;
    Eigen::VectorXd lam(n);
    for (int j = 0; j < n; ++j) {
        const int f = std::clamp(std::min(j, n - j), 1, m);
        lam(j) = std::exp(theta(f - 1));
    }
    return lam / lam.mean();
}

inline double sample_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_variance(const std::vector<double>& v) {
    const double m = sample_mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

inline double correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const Eigen::ArrayXd x = a.array() - a.mean();
    const Eigen::ArrayXd y = b.array() - b.mean();
    return (x * y).sum() / std::sqrt(x.square().sum() * y.square().sum());
}

inline std::filesystem::path source_dir() {
    const char* env = std::getenv("SPECREG_SOURCE_DIR");
    return env ? std::filesystem::path(env) : std::filesystem::current_path();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("specreg_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace support
