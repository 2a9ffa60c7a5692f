#pragma once

// Cubic B-spline expansion of the log variance, eta_t = sum_b delta_b phi_b(t).

#include <Eigen/Core>

namespace specreg {

/// Clamped cubic basis on [0, 1] with d - 4 equally spaced interior knots.
/// Row i of `design` is the basis evaluated at (i + 0.5) / T.
class SplineBasis {
public:
    static constexpr int kDegree = 3;

    SplineBasis(int num_times, int num_basis);

    int num_times() const { return num_times_; }
    int num_basis() const { return num_basis_; }
    const Eigen::VectorXd& knots() const { return knots_; }
    const Eigen::MatrixXd& design() const { return design_; }

    /// Basis row at rescaled time x; x is clamped to [0, 1], which makes every
    /// point past the sample share the value at x = 1.
    Eigen::RowVectorXd evaluate(double x) const;

    /// Basis row for time index t (1-based); t > T extrapolates as above.
    Eigen::RowVectorXd row_at(int t) const;

private:
    int num_times_;
    int num_basis_;
    Eigen::VectorXd knots_;
    Eigen::MatrixXd design_;
};

SplineBasis build_basis(int num_times, int num_basis);

struct VolatilityState {
    Eigen::VectorXd delta;
    Eigen::VectorXd eta;    // log sigma^2
    Eigen::VectorXd sigma;  // exp(eta / 2)
};

VolatilityState volatility_curve(const Eigen::Ref<const Eigen::VectorXd>& delta,
                                 const SplineBasis& basis);

}  // namespace specreg
