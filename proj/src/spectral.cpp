#include "specreg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "specreg/error.hpp"

namespace specreg {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

FourierGrid make_grid(int n) {
    FourierGrid grid;
    grid.n = n;
    grid.m = (n - 1) / 2;
    grid.frequencies.resize(grid.m);
    for (int j = 1; j <= grid.m; ++j) grid.frequencies(j - 1) = kTwoPi * j / n;
    return grid;
}

void require_finite(const Eigen::Ref<const Vector>& v, const char* what) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v(i))) {
            throw InvalidInput(std::string(what) + ": non-finite value at index " +
                               std::to_string(i));
        }
    }
}

// Shift that makes (2 pi / n) sum_j exp(log_values_j) equal one.
double normalizing_shift(const Vector& full_log_values) {
    const double top = full_log_values.maxCoeff();
    const double sum = (full_log_values.array() - top).exp().sum();
    const auto n = static_cast<double>(full_log_values.size());
    return -(top + std::log(sum * kTwoPi / n));
}

int largest_prime_factor(int n) {
    int largest = 1;
    for (int f = 2; static_cast<long>(f) * f <= n; ++f) {
        while (n % f == 0) {
            largest = f;
            n /= f;
        }
    }
    return n > 1 ? n : largest;
}

}  // namespace

Dft::Dft(int n) : n_(n), direct_(largest_prime_factor(n) <= 7) {
    if (n < 1) throw InvalidInput("Dft: length must be positive");
    if (direct_) return;
    int m = 1;
    while (m < 2 * n - 1) m *= 2;
    chirp_.resize(n);
    // k^2 mod 2n keeps the phase argument small and exact.
    for (long k = 0; k < n; ++k) {
        const long r = (k * k) % (2L * n);
        chirp_(k) = std::polar(1.0, -std::numbers::pi * static_cast<double>(r) / n);
    }
    Eigen::VectorXcd kernel = Eigen::VectorXcd::Zero(m);
    kernel(0) = std::conj(chirp_(0));
    for (int k = 1; k < n; ++k) kernel(k) = kernel(m - k) = std::conj(chirp_(k));
    fft_.fwd(kernel_hat_, kernel);
    pad_ = Eigen::VectorXcd::Zero(m);
}

void Dft::forward(Eigen::VectorXcd& out, const Eigen::VectorXcd& in) {
    if (in.size() != n_) throw InvalidInput("Dft: input length does not match");
    if (n_ == 1) {
        out = in;
        return;
    }
    if (direct_) {
        fft_.fwd(out, in);
        return;
    }
    pad_.setZero();
    pad_.head(n_) = in.cwiseProduct(chirp_);
    fft_.fwd(pad_hat_, pad_);
    pad_hat_.array() *= kernel_hat_.array();
    fft_.inv(pad_, pad_hat_);
    out = pad_.head(n_).cwiseProduct(chirp_);
}

void Dft::inverse(Eigen::VectorXcd& out, const Eigen::VectorXcd& in) {
    if (direct_) {
        if (in.size() != n_) throw InvalidInput("Dft: input length does not match");
        if (n_ == 1) {
            out = in;
            return;
        }
        fft_.inv(out, in);
        return;
    }
    forward(out, in.conjugate());
    out = out.conjugate() / static_cast<double>(n_);
}

FourierGrid fourier_frequencies(int n) {
    if (n < kMinGridLength) {
        throw InvalidInput("fourier_frequencies: n must be >= " +
                           std::to_string(kMinGridLength) + ", got " + std::to_string(n));
    }
    return make_grid(n);
}

Periodogram periodogram(const Eigen::Ref<const Vector>& series) {
    const auto n = static_cast<int>(series.size());
    if (n < 3) throw InvalidInput("periodogram: series length must be >= 3");
    require_finite(series, "periodogram");

    Dft dft(n);
    Eigen::VectorXcd spectrum;
    dft.forward(spectrum, series.cast<std::complex<double>>());

    Periodogram out;
    out.grid = make_grid(n);
    out.values.resize(out.grid.m);
    const double scale = 1.0 / (kTwoPi * n);
    for (int j = 1; j <= out.grid.m; ++j) out.values(j - 1) = std::norm(spectrum(j)) * scale;
    return out;
}

Vector periodogram_direct(const Eigen::Ref<const Vector>& series) {
    const auto n = static_cast<int>(series.size());
    if (n < 3) throw InvalidInput("periodogram_direct: series length must be >= 3");
    const FourierGrid grid = make_grid(n);
    Vector out(grid.m);
    for (int j = 0; j < grid.m; ++j) {
        std::complex<double> acc{0.0, 0.0};
        for (int t = 1; t <= n; ++t) {
            acc += series(t - 1) * std::polar(1.0, -t * grid.frequencies(j));
        }
        out(j) = std::norm(acc) / (kTwoPi * n);
    }
    return out;
}

FullSpectrum full_grid(const SpectralCurve& curve) {
    const int n = curve.n;
    const int m = (n - 1) / 2;
    if (m < 1 || curve.log_values.size() != m) {
        throw InvalidInput("full_grid: curve has " + std::to_string(curve.log_values.size()) +
                           " values, expected floor((n-1)/2) = " + std::to_string(m));
    }
    require_finite(curve.log_values, "full_grid");
    FullSpectrum full;
    full.log_values.resize(n);
    full.log_values(0) = curve.log_values(0);
    for (int j = 1; j < n; ++j) {
        const int folded = std::min(j, n - j);
        full.log_values(j) = curve.log_values(std::min(folded, m) - 1);
    }
    return full;
}

SpectralCurve positive_half(const FullSpectrum& spectrum) {
    const int n = spectrum.size();
    SpectralCurve curve;
    curve.n = n;
    curve.log_values = spectrum.log_values.segment(1, (n - 1) / 2);
    return curve;
}

AutocovSequence spectral_to_autocov(const FullSpectrum& spectrum, int max_lag) {
    const int n = spectrum.size();
    if (max_lag < 0 || max_lag >= n) {
        throw InvalidInput("spectral_to_autocov: max_lag must lie in [0, n), got " +
                           std::to_string(max_lag) + " with n = " + std::to_string(n));
    }
    require_finite(spectrum.log_values, "spectral_to_autocov");

    Dft dft(n);
    Eigen::VectorXcd lambda = spectrum.log_values.array().exp().cast<std::complex<double>>();
    Eigen::VectorXcd out;
    dft.inverse(out, lambda);  // (1/n) sum_j lambda_j exp(+i w_j h)

    AutocovSequence acv;
    acv.gammas.resize(max_lag + 1);
    for (int h = 0; h <= max_lag; ++h) acv.gammas(h) = kTwoPi * out(h).real();
    return acv;
}

SpectralCurve autocov_normalize(const SpectralCurve& curve) {
    const FullSpectrum full = full_grid(curve);
    SpectralCurve out = curve;
    out.log_values.array() += normalizing_shift(full.log_values);
    return out;
}

FullSpectrum autocov_normalize(const FullSpectrum& spectrum) {
    require_finite(spectrum.log_values, "autocov_normalize");
    FullSpectrum out = spectrum;
    out.log_values.array() += normalizing_shift(spectrum.log_values);
    return out;
}

FullSpectrum unit_diagonal_eigenvalues(const FullSpectrum& spectrum) {
    FullSpectrum out = autocov_normalize(spectrum);
    out.log_values.array() += std::log(kTwoPi);
    return out;
}

AutocovSequence refined_autocov(const FullSpectrum& spectrum, int max_lag) {
    const int n = spectrum.size();
    if (n < 1 || max_lag < 0) throw InvalidInput("refined_autocov: empty spectrum or negative lag");
    require_finite(spectrum.log_values, "refined_autocov");

    int factor = 1;
    while (static_cast<long>(n) * factor < 2L * (max_lag + 1)) ++factor;
    const int big_n = n * factor;

    Eigen::VectorXcd lambda(big_n);
    for (int i = 0; i < big_n; ++i) {
        const int lo = i / factor;
        const int hi = (lo + 1) % n;
        const double frac = static_cast<double>(i % factor) / factor;
        const double log_value =
            (1.0 - frac) * spectrum.log_values(lo) + frac * spectrum.log_values(hi);
        lambda(i) = std::exp(log_value);
    }
    Dft dft(big_n);
    Eigen::VectorXcd out;
    dft.inverse(out, lambda);

    AutocovSequence acv;
    acv.gammas.resize(max_lag + 1);
    for (int h = 0; h <= max_lag; ++h) acv.gammas(h) = kTwoPi * out(h).real();
    return acv;
}

Vector toeplitz_solve(const Vector& column, const Vector& rhs) {
    const auto n = column.size();
    if (n < 1 || rhs.size() != n) throw InvalidInput("toeplitz_solve: column and rhs lengths differ");
    require_finite(column, "toeplitz_solve");
    require_finite(rhs, "toeplitz_solve");
    const double r0 = column(0);
    if (!(r0 > 0.0)) throw NumericError("toeplitz_solve: matrix is not positive definite");
    const Vector r = column / r0;

    // x solves the leading k x k system, y the Yule-Walker system T y = -r.
    Vector x = Vector::Zero(n);
    Vector y = Vector::Zero(n);
    Vector tmp(n);
    x(0) = rhs(0);
    if (n > 1) y(0) = -r(1);
    double alpha = n > 1 ? -r(1) : 0.0;
    double beta = 1.0;
    for (Eigen::Index k = 1; k < n; ++k) {
        beta *= 1.0 - alpha * alpha;
        if (!(beta > 0.0)) throw NumericError("toeplitz_solve: matrix is not positive definite");
        const double mu = (rhs(k) - r.segment(1, k).dot(x.head(k).reverse())) / beta;
        x.head(k) += mu * y.head(k).reverse();
        x(k) = mu;
        if (k < n - 1) {
            alpha = (-r(k + 1) - r.segment(1, k).dot(y.head(k).reverse())) / beta;
            tmp.head(k) = y.head(k) + alpha * y.head(k).reverse();
            y.head(k) = tmp.head(k);
            y(k) = alpha;
        }
    }
    return x / r0;
}

CirculantOperator::CirculantOperator(const FullSpectrum& spectrum) : dft_(std::max(spectrum.size(), 1)) {
    const int n = spectrum.size();
    if (n < 1) throw InvalidInput("CirculantOperator: empty spectrum");
    require_finite(spectrum.log_values, "CirculantOperator");
    eigenvalues_ = spectrum.log_values.array().exp();
    for (int j = 0; j < n; ++j) {
        if (!(eigenvalues_(j) > kSpectralFloor)) {
            throw SingularCovariance("CirculantOperator: spectral value " +
                                         std::to_string(eigenvalues_(j)) + " at grid index " +
                                         std::to_string(j) + " is below the floor",
                                     "log_values(" + std::to_string(j) +
                                         ") = " + std::to_string(spectrum.log_values(j)));
        }
    }
    inverse_eigenvalues_ = eigenvalues_.cwiseInverse();
    logdet_ = spectrum.log_values.sum();
}

Vector CirculantOperator::apply(const Eigen::Ref<const Vector>& v, const Vector& diag) const {
    if (v.size() != eigenvalues_.size()) {
        throw InvalidInput("CirculantOperator: vector length " + std::to_string(v.size()) +
                           " does not match operator size " + std::to_string(size()));
    }
    Eigen::VectorXcd freq;
    dft_.forward(freq, v.cast<std::complex<double>>());
    freq.array() *= diag.array().cast<std::complex<double>>();
    dft_.inverse(work_, freq);
    return work_.real();
}

Vector CirculantOperator::matvec(const Eigen::Ref<const Vector>& v) const {
    return apply(v, eigenvalues_);
}

Vector CirculantOperator::solve(const Eigen::Ref<const Vector>& rhs) const {
    return apply(rhs, inverse_eigenvalues_);
}

Matrix CirculantOperator::solve_columns(const Eigen::Ref<const Matrix>& rhs) const {
    Matrix out(rhs.rows(), rhs.cols());
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) out.col(c) = apply(rhs.col(c), inverse_eigenvalues_);
    return out;
}

Matrix CirculantOperator::dense() const {
    const int n = size();
    Matrix out(n, n);
    Vector unit = Vector::Zero(n);
    for (int c = 0; c < n; ++c) {
        unit(c) = 1.0;
        out.col(c) = matvec(unit);
        unit(c) = 0.0;
    }
    return out;
}

}  // namespace specreg
