#include "specreg/report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specreg/csv.hpp"
#include "specreg/error.hpp"

namespace specreg {
namespace {

struct ParsedTable {
    std::vector<std::string> models;
    std::vector<int> horizons;
    Eigen::MatrixXd values;
};

ParsedTable read_table(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    if (t.header.empty() || t.header[0] != "model") throw InvalidInput(path.string() + ": first column must be model");
    ParsedTable out;
    for (std::size_t c = 1; c < t.header.size(); ++c) {
        const std::string& h = t.header[c];
        if (h.size() < 2 || h[0] != 'k') throw InvalidInput(path.string() + ": bad horizon column '" + h + "'");
        out.horizons.push_back(static_cast<int>(parse_number(h.substr(1), 1, h)));
    }
    out.values.resize(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(out.horizons.size()));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out.models.push_back(t.rows[r].cells[0]);
        for (std::size_t c = 1; c < t.header.size(); ++c) {
            out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) =
                parse_number(t.rows[r].cells[c], t.rows[r].line, t.header[c]);
        }
    }
    return out;
}

}  // namespace

std::string format_table(const std::vector<std::string>& models, const std::vector<int>& horizons,
                         const Eigen::MatrixXd& values) {
    std::string out = "model";
    for (int k : horizons) out += ",k" + std::to_string(k);
    out += '\n';
    for (std::size_t r = 0; r < models.size(); ++r) {
        out += models[r];
        for (std::size_t c = 0; c < horizons.size(); ++c) {
            out += ',';
            out += format_number(values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
        }
        out += '\n';
    }
    return out;
}

void write_report(const std::filesystem::path& dir, const MetricsReport& report) {
    write_text_file(dir / "rmspe_table.csv", format_table(report.models, report.horizons, report.rmspe));
    write_text_file(dir / "rwr_table.csv", format_table(report.models, report.horizons, report.rwr));
    write_text_file(dir / "ratio_table.csv", format_table(report.models, report.horizons, report.ratio));
    write_text_file(dir / "count_table.csv",
                    format_table(report.models, report.horizons, report.counts.cast<double>()));
}

MetricsReport read_report(const std::filesystem::path& dir) {
    const ParsedTable rmspe = read_table(dir / "rmspe_table.csv");
    const ParsedTable rwr = read_table(dir / "rwr_table.csv");
    const ParsedTable ratio = read_table(dir / "ratio_table.csv");
    const std::filesystem::path count_path = dir / "count_table.csv";
    for (const ParsedTable* t : {&rwr, &ratio}) {
        if (t->models != rmspe.models || t->horizons != rmspe.horizons) {
            throw InvalidInput(dir.string() + ": report tables disagree on models or horizons");
        }
    }
    MetricsReport report;
    report.models = rmspe.models;
    report.horizons = rmspe.horizons;
    report.rmspe = rmspe.values;
    report.rwr = rwr.values;
    report.ratio = ratio.values;
    if (std::filesystem::exists(count_path)) {
        report.counts = read_table(count_path).values.array().round().cast<int>();
    } else {
        report.counts = Eigen::MatrixXi::Zero(report.rmspe.rows(), report.rmspe.cols());
    }
    return report;
}

std::string forecasts_csv(const std::vector<EvalRecord>& records) {
    std::string out = "model,origin,horizon,forecast,truth,error,status\n";
    for (const auto& r : records) {
        out += std::string(to_string(r.model)) + ',' + std::to_string(r.origin) + ',' + std::to_string(r.horizon) + ',';
        out += r.ok ? format_number(r.forecast) : std::string();
        out += ',' + format_number(r.truth) + ',';
        out += r.ok ? format_number(r.error()) : std::string();
        out += r.ok ? ",ok\n" : ",failed\n";
    }
    return out;
}

std::string metrics_long_csv(const MetricsReport& report) {
    std::string out = "model,horizon,count,rmspe,rwr,ratio\n";
    for (std::size_t r = 0; r < report.models.size(); ++r) {
        for (std::size_t c = 0; c < report.horizons.size(); ++c) {
            const auto i = static_cast<Eigen::Index>(r);
            const auto j = static_cast<Eigen::Index>(c);
            out += report.models[r] + ',' + std::to_string(report.horizons[c]) + ',' +
                   std::to_string(report.counts(i, j)) + ',' + format_number(report.rmspe(i, j)) + ',' +
                   format_number(report.rwr(i, j)) + ',' + format_number(report.ratio(i, j)) + '\n';
        }
    }
    return out;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw InvalidInput("quantile: no values");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

CurveBand band_from_rows(const std::vector<Eigen::VectorXd>& rows, Eigen::VectorXd x) {
    if (rows.empty()) throw InvalidInput("no posterior draws");
    const auto len = rows.front().size();
    CurveBand band;
    band.x = std::move(x);
    band.mean = Eigen::VectorXd::Zero(len);
    band.lower.resize(len);
    band.upper.resize(len);
    std::vector<double> column(rows.size());
    for (Eigen::Index j = 0; j < len; ++j) {
        for (std::size_t r = 0; r < rows.size(); ++r) column[r] = rows[r](j);
        double sum = 0.0;
        for (double v : column) sum += v;
        band.mean(j) = sum / static_cast<double>(column.size());
        band.lower(j) = quantile(column, 0.025);
        band.upper(j) = quantile(column, 0.975);
    }
    return band;
}

}  // namespace

CurveBand theta_band(const PosteriorSamples& samples) {
    std::vector<Eigen::VectorXd> rows;
    for (const ChainState* s : samples.all_draws()) {
        rows.push_back(autocov_normalize(SpectralCurve{samples.n, s->theta}).log_values);
    }
    const FourierGrid grid = fourier_frequencies(samples.n);
    return band_from_rows(rows, grid.frequencies / (2.0 * std::numbers::pi));
}

CurveBand log_variance_band(const PosteriorSamples& samples, const SamplerContext& ctx) {
    std::vector<Eigen::VectorXd> rows;
    for (const ChainState* s : samples.all_draws()) {
        rows.push_back((ctx.basis.design() * s->delta).array() - std::log(s->tau_eps));
    }
    return band_from_rows(rows, Eigen::VectorXd::LinSpaced(samples.n, 1.0, samples.n));
}

std::string curve_csv(const CurveBand& band, const std::string& x_name) {
    std::string out = x_name + ",mean,lower_2.5,upper_97.5\n";
    for (Eigen::Index j = 0; j < band.x.size(); ++j) {
        out += format_number(band.x(j)) + ',' + format_number(band.mean(j)) + ',' + format_number(band.lower(j)) +
               ',' + format_number(band.upper(j)) + '\n';
    }
    return out;
}

}  // namespace specreg
