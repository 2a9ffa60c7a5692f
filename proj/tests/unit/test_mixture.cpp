#include <gtest/gtest.h>

#include <cmath>

#include "specreg/error.hpp"
#include "specreg/mixture.hpp"
#include "support.hpp"

using namespace specreg;
using support::kPi;

namespace {

MixtureTable degenerate() {
    MixtureTable t;
    t.version = "single";
    t.components = {{{1.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}}};
    return t;
}

MixtureTable symmetric_pair() {
    MixtureTable t;
    t.version = "pair";
    t.components = {{{0.5, -1.0, 1.0}, {0.5, 1.0, 1.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}}};
    return t;
}

double normal_pdf(double x, double mean, double sd) {
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * kPi));
}

std::array<double, 5> normalized_weights(double residual, const MixtureTable& t) {
    std::array<double, 5> w{};
    double total = 0.0;
    for (int l = 0; l < 5; ++l) {
        const auto& c = t.components[l];
        w[l] = c.p * normal_pdf(residual, c.k, c.v);
        total += w[l];
    }
    for (double& x : w) x /= total;
    return w;
}

}  // namespace

TEST(MixtureTable, StandardTableIsValid) {
    const MixtureTable t = MixtureTable::standard();
    EXPECT_NO_THROW(t.validate());
    double total = 0.0;
    for (const auto& c : t.components) {
        EXPECT_GT(c.p, 0.0);
        EXPECT_GT(c.v, 0.0);
        total += c.p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(MixtureTable, ShippedAssetMatchesBuiltIn) {
    const MixtureTable file = MixtureTable::load(support::source_dir() / "data" / "log_exp_mixture.json");
    const MixtureTable builtin = MixtureTable::standard();
    EXPECT_EQ(file.version, builtin.version);
    for (int l = 0; l < 5; ++l) {
        EXPECT_EQ(file.components[l].p, builtin.components[l].p);
        EXPECT_EQ(file.components[l].k, builtin.components[l].k);
        EXPECT_EQ(file.components[l].v, builtin.components[l].v);
    }
}

TEST(MixtureTable, JsonRoundTrip) {
    const MixtureTable t = MixtureTable::standard();
    const MixtureTable back = MixtureTable::from_json_text(t.to_json_text());
    for (int l = 0; l < 5; ++l) {
        EXPECT_EQ(back.components[l].p, t.components[l].p);
        EXPECT_EQ(back.components[l].k, t.components[l].k);
        EXPECT_EQ(back.components[l].v, t.components[l].v);
    }
}

TEST(MixtureTable, RejectsMalformedTables) {
    MixtureTable t = MixtureTable::standard();
    t.components[0].p += 0.01;
    EXPECT_THROW(t.validate(), InvalidInput);
    t = MixtureTable::standard();
    t.components[2].v = 0.0;
    EXPECT_THROW(t.validate(), InvalidInput);
    t = MixtureTable::standard();
    t.components[1].p = -t.components[1].p;
    EXPECT_THROW(t.validate(), InvalidInput);
    EXPECT_THROW(MixtureTable::from_json_text(R"({"version":"x","components":[{"p":1,"k":0,"v":1}]})"),
                 InvalidInput);
    EXPECT_THROW(MixtureTable::from_json_text("{not json"), InvalidInput);
}

TEST(MixtureDensity, DegenerateIsStandardNormal) {
    EXPECT_NEAR(mixture_log_density(0.0, degenerate()), std::log(1.0 / std::sqrt(2.0 * kPi)), 1e-14);
}

TEST(MixtureDensity, SymmetricPairAtZero) {
    EXPECT_NEAR(mixture_log_density(0.0, symmetric_pair()), std::log(normal_pdf(1.0, 0.0, 1.0)), 1e-14);
}

TEST(MixtureDensity, FullTableMatchesFiveTermSum) {
    const MixtureTable t = MixtureTable::standard();
    for (double xi : {-0.577, -3.0, 0.0, 1.2, -7.5}) {
        double direct = 0.0;
        for (const auto& c : t.components) direct += c.p * normal_pdf(xi, c.k, c.v);
        EXPECT_NEAR(mixture_log_density(xi, t), std::log(direct), 1e-12) << xi;
    }
}

TEST(MixtureDensity, IntegratesToOne) {
    const MixtureTable t = MixtureTable::standard();
    const int steps = 50000;
    const double lo = -20.0;
    const double hi = 5.0;
    const double h = (hi - lo) / steps;
    double area = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        area += w * std::exp(mixture_log_density(lo + i * h, t));
    }
    EXPECT_NEAR(area * h, 1.0, 1e-4);
}

TEST(Labels, LogProbabilitiesMatchDirectNormalization) {
    const MixtureTable t = MixtureTable::standard();
    const auto logp = label_log_probabilities(-0.5, t);
    const auto direct = normalized_weights(-0.5, t);
    for (int l = 0; l < 5; ++l) EXPECT_NEAR(std::exp(logp[l]), direct[l], 1e-12);
}

TEST(Labels, DegenerateTableAlwaysPicksItsComponent) {
    Rng rng(3);
    const Eigen::VectorXd phi = support::normal_vector(40, 1) * 3.0;
    const Eigen::VectorXd theta = support::normal_vector(40, 2);
    for (int rep = 0; rep < 50; ++rep) {
        for (int label : sample_labels(phi, theta, degenerate(), rng)) EXPECT_EQ(label, 0);
    }
}

TEST(Labels, SymmetricPairSplitsEvenly) {
    constexpr int draws = 100000;
    Rng rng(5);
    const Eigen::VectorXd phi = Eigen::VectorXd::Constant(1, 0.3);
    const Eigen::VectorXd theta = Eigen::VectorXd::Constant(1, 0.3);
    int first = 0;
    for (int i = 0; i < draws; ++i) first += sample_labels(phi, theta, symmetric_pair(), rng)[0] == 0;
    const double se = std::sqrt(0.25 / draws);
    EXPECT_NEAR(static_cast<double>(first) / draws, 0.5, 3.0 * se);
}

TEST(Labels, FrequenciesMatchCategorical) {
    constexpr int draws = 100000;
    const MixtureTable t = MixtureTable::standard();
    const auto probs = normalized_weights(-0.5, t);
    Rng rng(8);
    // phi - theta = -0.5 at every frequency.
    const Eigen::VectorXd theta = support::normal_vector(10, 4);
    const Eigen::VectorXd phi = theta.array() - 0.5;
    std::array<int, 5> counts{};
    int total = 0;
    for (int i = 0; i < draws / 10; ++i) {
        for (int label : sample_labels(phi, theta, t, rng)) {
            ASSERT_GE(label, 0);
            ASSERT_LT(label, 5);
            ++counts[label];
            ++total;
        }
    }
    double chi2 = 0.0;
    for (int l = 0; l < 5; ++l) {
        const double expected = probs[l] * total;
        const double se = std::sqrt(probs[l] * (1.0 - probs[l]) / total);
        EXPECT_NEAR(static_cast<double>(counts[l]) / total, probs[l], 3.0 * se + 1e-12) << l;
        chi2 += (counts[l] - expected) * (counts[l] - expected) / expected;
    }
    // 0.999 quantile of chi-square with 4 degrees of freedom.
    EXPECT_LT(chi2, 18.467);
}

TEST(Labels, LengthMismatchRejected) {
    Rng rng(1);
    EXPECT_THROW(sample_labels(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(4), MixtureTable::standard(), rng),
                 InvalidInput);
}

TEST(Labels, ExtremeResidualStaysFinite) {
    Rng rng(1);
    const Eigen::VectorXd phi = Eigen::VectorXd::Constant(3, -60.0);
    const Eigen::VectorXd theta = Eigen::VectorXd::Zero(3);
    const LabelVector labels = sample_labels(phi, theta, MixtureTable::standard(), rng);
    EXPECT_EQ(labels.size(), 3u);
}

TEST(Validation, StandardTablePasses) {
    Rng rng(77);
    const MixtureDiagnostics d = validate_mixture(MixtureTable::standard(), rng);
    EXPECT_NEAR(d.mixture_mean, -0.57722, 0.05);
    EXPECT_LE(d.ks_statistic, 0.02);
    EXPECT_NEAR(d.reference_mean, -0.57722, 0.02);
}

TEST(Validation, SingleGaussianFails) {
    Rng rng(78);
    MixtureTable t = degenerate();
    t.components[0].k = -0.57722;
    t.components[0].v = kPi / std::sqrt(6.0);
    const MixtureDiagnostics d = validate_mixture(t, rng);
    EXPECT_GT(d.ks_statistic, 0.02);
}
