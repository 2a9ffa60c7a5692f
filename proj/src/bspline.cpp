#include "specreg/bspline.hpp"

#include <algorithm>
#include <string>

#include "specreg/error.hpp"

namespace specreg {

SplineBasis::SplineBasis(int num_times, int num_basis)
    : num_times_(num_times), num_basis_(num_basis) {
    if (num_basis < kDegree + 1) {
        throw InvalidInput("build_basis: need at least 4 basis functions, got " +
                           std::to_string(num_basis));
    }
    if (num_times < num_basis) {
        throw InvalidInput("build_basis: T = " + std::to_string(num_times) +
                           " is smaller than d = " + std::to_string(num_basis));
    }
    const int interior = num_basis - (kDegree + 1);
    knots_.resize(num_basis + kDegree + 1);
    for (int i = 0; i <= kDegree; ++i) {
        knots_(i) = 0.0;
        knots_(knots_.size() - 1 - i) = 1.0;
    }
    for (int i = 1; i <= interior; ++i) knots_(kDegree + i) = static_cast<double>(i) / (interior + 1);

    design_.resize(num_times, num_basis);
    for (int i = 0; i < num_times; ++i) design_.row(i) = evaluate((i + 0.5) / num_times);
}

Eigen::RowVectorXd SplineBasis::evaluate(double x) const {
    x = std::clamp(x, 0.0, 1.0);
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(num_basis_);

    // Knot span: knots_(span) <= x < knots_(span + 1), with the right end folded
    // into the last non-empty span.
    int span = num_basis_ - 1;
    if (x < 1.0) {
        span = kDegree;
        while (span < num_basis_ - 1 && x >= knots_(span + 1)) ++span;
    }

    // de Boor's triangular scheme for the kDegree + 1 nonzero functions.
    double values[kDegree + 1] = {1.0, 0.0, 0.0, 0.0};
    double left[kDegree + 1] = {};
    double right[kDegree + 1] = {};
    for (int j = 1; j <= kDegree; ++j) {
        left[j] = x - knots_(span + 1 - j);
        right[j] = knots_(span + j) - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double tmp = values[r] / (right[r + 1] + left[j - r]);
            values[r] = saved + right[r + 1] * tmp;
            saved = left[j - r] * tmp;
        }
        values[j] = saved;
    }
    for (int r = 0; r <= kDegree; ++r) row(span - kDegree + r) = values[r];
    return row;
}

Eigen::RowVectorXd SplineBasis::row_at(int t) const {
    return evaluate((t - 0.5) / num_times_);
}

SplineBasis build_basis(int num_times, int num_basis) { return SplineBasis(num_times, num_basis); }

VolatilityState volatility_curve(const Eigen::Ref<const Eigen::VectorXd>& delta,
                                 const SplineBasis& basis) {
    if (delta.size() != basis.num_basis()) {
        throw InvalidInput("volatility_curve: delta has " + std::to_string(delta.size()) +
                           " entries, basis has " + std::to_string(basis.num_basis()));
    }
    VolatilityState state;
    state.delta = delta;
    state.eta = basis.design() * delta;
    state.sigma = (0.5 * state.eta.array()).exp();
    return state;
}

}  // namespace specreg
