#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "specreg/error.hpp"
#include "specreg/evaluation.hpp"

using namespace specreg;

namespace {

// s_{t+1} = s_t + 0.01 + 0.2 z_t + 0.1 u_{t+1}, u iid N(0, 1), z an AR(1).
FxPanel iid_panel(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    FxPanel p;
    p.s.resize(n);
    Eigen::VectorXd z(n);
    z(0) = 0.0;
    p.s(0) = 0.0;
    for (int t = 1; t < n; ++t) {
        z(t) = 0.9 * z(t - 1) + 0.2 * g(rng);
        p.s(t) = p.s(t - 1) + 0.01 + 0.2 * z(t - 1) + 0.1 * g(rng);
    }
    p.m = p.s + z;
    p.m_star = p.y = p.y_star = Eigen::VectorXd::Zero(n);
    for (int t = 0; t < n; ++t) p.dates.push_back(std::to_string(1950 + t / 12) + "-" + (t % 12 < 9 ? "0" : "") +
                                                  std::to_string(t % 12 + 1));
    return p;
}

EvalSettings light_settings() {
    EvalSettings s;
    s.sampler.chains = 1;
    s.sampler.iterations = 60;
    s.sampler.retain = 20;
    s.baseline.iterations = 200;
    s.baseline.burn_in = 100;
    return s;
}

}  // namespace

TEST(Window, ReadsOnlyTheFittingWindow) {
    const FxPanel p = iid_panel(80, 1);
    const Eigen::VectorXd z = p.deviation();
    std::set<int> seen;
    const EvalWindow w = make_window(p.s, z, 7, 40, 3, [&](int t) { seen.insert(t); });
    EXPECT_EQ(*seen.begin(), 8);
    EXPECT_EQ(*seen.rbegin(), 47);
    EXPECT_EQ(w.base, p.s(46));
    EXPECT_EQ(w.data.num_obs(), 37);
    EXPECT_EQ(w.data.y(0), p.s(10) - p.s(7));
    EXPECT_EQ(w.data.X_future(2, 1), z(46));
}

TEST(Window, FutureDataCannotLeak) {
    const FxPanel p = iid_panel(90, 2);
    FxPanel mutated = p;
    mutated.s.tail(90 - 50).array() += 100.0;
    mutated.m.tail(90 - 50).array() -= 50.0;
    const EvalSettings settings = light_settings();
    for (ModelKind m : {ModelKind::RW, ModelKind::OLS, ModelKind::BAR1, ModelKind::BARCH1, ModelKind::BTV}) {
        const EvalWindow a = make_window(p.s, p.deviation(), 10, 40, 6);
        const EvalWindow b = make_window(mutated.s, mutated.deviation(), 10, 40, 6);
        EXPECT_EQ(forecast_cell(m, a, settings, 5), forecast_cell(m, b, settings, 5)) << to_string(m);
    }
}

TEST(Window, RejectsBadGeometry) {
    const Eigen::VectorXd s = Eigen::VectorXd::Zero(30);
    EXPECT_THROW(make_window(s, s, 0, 31, 1), InvalidInput);
    EXPECT_THROW(make_window(s, s, 0, 10, 10), InvalidInput);
    EXPECT_THROW(make_window(s, Eigen::VectorXd::Zero(29), 0, 10, 1), InvalidInput);
}

TEST(Plan, InfeasibleMessage) {
    EvalPlan plan;
    plan.window = 320;
    plan.max_origin = 5;
    plan.horizons = {1, 12};
    EXPECT_NO_THROW(plan.validate(337));
    try {
        plan.validate(336);
        FAIL();
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("l + T + max(k) <= n"), std::string::npos);
    }
    plan.horizons = {0};
    EXPECT_THROW(plan.validate(1000), InvalidInput);
}

TEST(Evaluation, SingleOriginRmspeIsAbsoluteError) {
    const FxPanel p = iid_panel(60, 3);
    EvalPlan plan;
    plan.window = 40;
    plan.max_origin = 0;
    plan.horizons = {2};
    plan.models = {ModelKind::RW, ModelKind::OLS};
    const EvalResult r = run_evaluation(p, plan, light_settings());
    ASSERT_EQ(r.records.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_DOUBLE_EQ(r.report.rmspe(static_cast<Eigen::Index>(i), 0), std::abs(r.records[i].error()));
        EXPECT_EQ(r.records[i].truth, p.s(41));
    }
    EXPECT_EQ(r.records[0].forecast, p.s(39));
    EXPECT_EQ(r.report.rwr(0, 0), 0.0);
}

TEST(Evaluation, OlsErrorMatchesNoiseLevel) {
    const FxPanel p = iid_panel(420, 4);
    EvalPlan plan;
    plan.window = 120;
    plan.max_origin = 298;
    plan.horizons = {1};
    plan.models = {ModelKind::OLS};
    const EvalResult r = run_evaluation(p, plan, light_settings());
    EXPECT_EQ(r.report.counts(0, 0), 299);
    EXPECT_NEAR(r.report.rmspe(0, 0), 0.1, 0.015);
}

TEST(Evaluation, RecordOrderAndDeterminism) {
    const FxPanel p = iid_panel(70, 5);
    EvalPlan plan;
    plan.window = 50;
    plan.max_origin = 2;
    plan.horizons = {1, 3};
    plan.models = {ModelKind::RW, ModelKind::BFV};
    EvalSettings settings = light_settings();
    const EvalResult a = run_evaluation(p, plan, settings);
    ASSERT_EQ(a.records.size(), 12u);
    std::size_t i = 0;
    for (ModelKind m : plan.models) {
        for (int l = 0; l <= 2; ++l) {
            for (int k : plan.horizons) {
                EXPECT_EQ(a.records[i].model, m);
                EXPECT_EQ(a.records[i].origin, l);
                EXPECT_EQ(a.records[i].horizon, k);
                ++i;
            }
        }
    }
    settings.threads = 3;
    const EvalResult b = run_evaluation(p, plan, settings);
    EXPECT_TRUE(a.report == b.report);
}

TEST(Evaluation, SummarizeDropsFailedCells) {
    std::vector<EvalRecord> recs(3);
    recs[0] = {ModelKind::OLS, 0, 1, 1.0, 2.0, 0.0, true, {}};
    recs[1] = {ModelKind::OLS, 1, 1, 0.0, 0.0, 0.0, false, "boom"};
    recs[2] = {ModelKind::OLS, 2, 1, 3.0, 2.0, 2.0, true, {}};
    const MetricsReport r = summarize(recs, {ModelKind::OLS, ModelKind::BTV}, {1});
    EXPECT_EQ(r.counts(0, 0), 2);
    EXPECT_DOUBLE_EQ(r.rmspe(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(r.rwr(0, 0), 0.5);
    EXPECT_TRUE(std::isnan(r.rmspe(1, 0)));
}

TEST(Evaluation, ModelNames) {
    EXPECT_EQ(parse_model("btv"), ModelKind::BTV);
    EXPECT_EQ(parse_model("BAR(1)"), ModelKind::BAR1);
    EXPECT_EQ(parse_model("barch(1)"), ModelKind::BARCH1);
    EXPECT_THROW(parse_model("garch"), InvalidInput);
    for (ModelKind m : {ModelKind::RW, ModelKind::OLS, ModelKind::BFV}) EXPECT_EQ(parse_model(to_string(m)), m);
}
