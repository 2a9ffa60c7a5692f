#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "specreg/error.hpp"
#include "specreg/report.hpp"
#include "support.hpp"

using namespace specreg;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MetricsReport sample_report() {
    MetricsReport r;
    r.models = {"RW", "OLS", "BTV"};
    r.horizons = {1, 3, 6};
    r.rmspe.resize(3, 3);
    r.rmspe << 0.03, 0.05, 0.071, 0.031, 0.0499, 0.07, 0.1 / 3.0, std::numeric_limits<double>::quiet_NaN(), 0.069;
    r.rwr.resize(3, 3);
    r.rwr << 0, 0, 0, 0.5, 0.25, 2.0 / 3.0, 0.6, 0.1, 0.2;
    r.ratio = ratio_table(r.rmspe);
    r.counts.resize(3, 3);
    r.counts << 6, 6, 6, 6, 6, 6, 6, 0, 6;
    return r;
}

}  // namespace

TEST(Report, WriteReadRoundTrip) {
    const auto dir = support::scratch_dir("report_roundtrip");
    const MetricsReport r = sample_report();
    write_report(dir, r);
    const MetricsReport back = read_report(dir);
    EXPECT_TRUE(back == r);
    EXPECT_EQ(back.rmspe(2, 0), 0.1 / 3.0);
    const std::string table = slurp(dir / "rmspe_table.csv");
    EXPECT_EQ(table.substr(0, table.find('\n')), "model,k1,k3,k6");
    // Writing twice gives identical bytes.
    write_report(dir, back);
    EXPECT_EQ(slurp(dir / "rmspe_table.csv"), table);
}

TEST(Report, MissingTableRejected) {
    const auto dir = support::scratch_dir("report_missing");
    EXPECT_THROW(read_report(dir), InvalidInput);
}

TEST(Report, LongFormats) {
    const MetricsReport r = sample_report();
    const std::string m = metrics_long_csv(r);
    EXPECT_EQ(m.substr(0, m.find('\n')), "model,horizon,count,rmspe,rwr,ratio");
    EXPECT_EQ(std::count(m.begin(), m.end(), '\n'), 10);

    std::vector<EvalRecord> recs(2);
    recs[0] = {ModelKind::OLS, 0, 1, 1.5, 1.0, 1.2, true, {}};
    recs[1] = {ModelKind::BTV, 0, 1, 0.0, 1.0, 1.2, false, "singular"};
    const std::string f = forecasts_csv(recs);
    EXPECT_EQ(f, "model,origin,horizon,forecast,truth,error,status\n"
                 "OLS,0,1,1.5,1,0.5,ok\n"
                 "BTV,0,1,,1,,failed\n");
}

TEST(Report, CurveCsv) {
    CurveBand b;
    b.x = Eigen::Vector2d(0.25, 0.5);
    b.mean = Eigen::Vector2d(1.0, 2.0);
    b.lower = Eigen::Vector2d(0.5, 1.5);
    b.upper = Eigen::Vector2d(1.5, 2.5);
    EXPECT_EQ(curve_csv(b, "frequency"), "frequency,mean,lower_2.5,upper_97.5\n0.25,1,0.5,1.5\n0.5,2,1.5,2.5\n");
}

TEST(Quantile, LinearInterpolation) {
    const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
    EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(quantile(v, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(quantile(v, 0.25), 1.75);
    EXPECT_DOUBLE_EQ(quantile({7.0}, 0.975), 7.0);
    EXPECT_THROW(quantile({}, 0.5), InvalidInput);
}
