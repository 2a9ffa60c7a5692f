#pragma once

// Fourier grids, periodograms and the circulant covariance operator.
//
// Convention: the spectral density lives on [-pi, pi) with
//   gamma(h) = int exp(i w h) lambda(w) dw,
// so unit-variance white noise has lambda == 1 / (2 pi). Integrals are
// evaluated as Riemann sums over the n-point grid w_j = 2 pi j / n.

#include <Eigen/Core>
#include <complex>
#include <unsupported/Eigen/FFT>

namespace specreg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Minimum series length accepted by fourier_frequencies.
inline constexpr int kMinGridLength = 8;

/// Smallest spectral value the circulant operator will invert.
inline constexpr double kSpectralFloor = 1e-12;

/// Positive Fourier frequencies w_j = 2 pi j / n, j = 1..m, m = floor((n-1)/2).
struct FourierGrid {
    int n = 0;
    int m = 0;
    Vector frequencies;
};

FourierGrid fourier_frequencies(int n);

struct Periodogram {
    FourierGrid grid;
    Vector values;
};

/// I_n(w_j) = |sum_t e_t exp(-i t w_j)|^2 / (2 pi n) at the positive Fourier
/// frequencies. Accepts any n >= 3; w = 0 and w = pi are never reported.
Periodogram periodogram(const Eigen::Ref<const Vector>& series);

/// Direct O(n^2) evaluation of the same quantity.
Vector periodogram_direct(const Eigen::Ref<const Vector>& series);

/// log lambda at the m positive Fourier frequencies of an n-point grid.
struct SpectralCurve {
    int n = 0;
    Vector log_values;  // length m
};

/// log lambda at every point w_j = 2 pi j / n, j = 0..n-1 (negative
/// frequencies wrap to j > n/2).
struct FullSpectrum {
    Vector log_values;  // length n

    int size() const { return static_cast<int>(log_values.size()); }
};

struct AutocovSequence {
    Vector gammas;  // lags 0..L

    int max_lag() const { return static_cast<int>(gammas.size()) - 1; }
};

/// Extends a positive-half curve to the full grid: lambda(-w) = lambda(w),
/// and w = 0 (and w = pi for even n) take the nearest interior value.
FullSpectrum full_grid(const SpectralCurve& curve);

/// Positive-half restriction of a full-grid spectrum.
SpectralCurve positive_half(const FullSpectrum& spectrum);

/// gamma(h) = (2 pi / n) sum_j lambda(w_j) cos(w_j h), h = 0..max_lag < n.
AutocovSequence spectral_to_autocov(const FullSpectrum& spectrum, int max_lag);

/// Shifts log values so that gamma(0) == 1.
SpectralCurve autocov_normalize(const SpectralCurve& curve);
FullSpectrum autocov_normalize(const FullSpectrum& spectrum);

/// Eigenvalues 2 pi lambda_j of the circulant correlation matrix implied by a
/// spectrum after normalization; their mean is exactly one, so the circulant
/// matrix has a unit diagonal.
FullSpectrum unit_diagonal_eigenvalues(const FullSpectrum& spectrum);

/// Autocovariances for lags 0..max_lag, which may exceed n. The log spectrum
/// is linearly interpolated (periodically, in w) onto a refined grid whose size
/// is a multiple of n and at least 2 (max_lag + 1); one inverse FFT produces
/// all lags.
AutocovSequence refined_autocov(const FullSpectrum& spectrum, int max_lag);

/// Solves R x = rhs for the symmetric Toeplitz R with first column `column`
/// (Levinson recursion, O(n^2)). Throws NumericError when R is not positive
/// definite.
Vector toeplitz_solve(const Vector& column, const Vector& rhs);

/// Discrete Fourier transform of a fixed length n, with Eigen's sign and scaling
/// conventions (forward exp(-i...), inverse carries 1/n). Lengths whose largest
/// prime factor exceeds 7 go through Bluestein's chirp-z identity on a padded
/// power-of-two transform, so every length costs O(n log n).
///
/// Caches plans; one instance must not be used from two threads at once.
class Dft {
public:
    explicit Dft(int n);

    int size() const { return n_; }
    void forward(Eigen::VectorXcd& out, const Eigen::VectorXcd& in);
    void inverse(Eigen::VectorXcd& out, const Eigen::VectorXcd& in);

private:
    int n_ = 0;
    bool direct_ = true;
    Eigen::FFT<double> fft_;
    Eigen::VectorXcd chirp_;          // exp(-i pi k^2 / n), k = 0..n-1
    Eigen::VectorXcd kernel_hat_;     // transform of the padded conjugate chirp
    Eigen::VectorXcd pad_;
    Eigen::VectorXcd pad_hat_;
};

/// Circulant matrix F diag(lambda) F^* with F the unitary DFT matrix.
///
/// Holds a cached FFT plan, so a single instance must not be used from two
/// threads at once. Copies are independent.
class CirculantOperator {
public:
    explicit CirculantOperator(const FullSpectrum& spectrum);

    int size() const { return static_cast<int>(eigenvalues_.size()); }
    const Vector& eigenvalues() const { return eigenvalues_; }

    Vector matvec(const Eigen::Ref<const Vector>& v) const;
    Vector solve(const Eigen::Ref<const Vector>& rhs) const;

    /// Applies the inverse to every column.
    Matrix solve_columns(const Eigen::Ref<const Matrix>& rhs) const;

    /// sum_j log lambda_j over the full grid.
    double logdet() const { return logdet_; }

    /// Dense n x n matrix; for tests and small problems.
    Matrix dense() const;

private:
    Vector apply(const Eigen::Ref<const Vector>& v, const Vector& diag) const;

    Vector eigenvalues_;
    Vector inverse_eigenvalues_;
    double logdet_ = 0.0;
    mutable Dft dft_;
    mutable Eigen::VectorXcd work_;
};

}  // namespace specreg
