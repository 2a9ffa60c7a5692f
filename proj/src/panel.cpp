#include "specreg/panel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "specreg/csv.hpp"
#include "specreg/error.hpp"

namespace specreg {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool valid_month(const std::string& d) {
    if (d.size() != 7 || d[4] != '-') return false;
    for (int i : {0, 1, 2, 3, 5, 6}) {
        if (d[i] < '0' || d[i] > '9') return false;
    }
    const int month = (d[5] - '0') * 10 + (d[6] - '0');
    return month >= 1 && month <= 12;
}

Eigen::VectorXd& series_of(FxPanel& p, int column) {
    switch (column) {
        case 0: return p.s;
        case 1: return p.m;
        case 2: return p.m_star;
        case 3: return p.y;
        default: return p.y_star;
    }
}

const Eigen::VectorXd& series_of(const FxPanel& p, int column) {
    return series_of(const_cast<FxPanel&>(p), column);
}

int column_index(const std::string& name) {
    const auto& names = panel_columns();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    throw InvalidInput("unknown panel column '" + name + "'");
}

}  // namespace

std::vector<int> FxPanel::gaps(const std::string& column) const {
    const Eigen::VectorXd& v = series_of(*this, column_index(column));
    std::vector<int> out;
    for (Eigen::Index t = 0; t < v.size(); ++t) {
        if (std::isnan(v(t))) out.push_back(static_cast<int>(t));
    }
    return out;
}

bool FxPanel::complete() const {
    for (const auto& c : panel_columns()) {
        if (!gaps(c).empty()) return false;
    }
    return true;
}

Eigen::VectorXd FxPanel::deviation() const {
    if (!complete()) throw InvalidInput("panel has missing values; impute before building the regression");
    return (m - m_star - (y - y_star)) - s;
}

FxPanel parse_panel(const std::string& csv_text, const std::string& currency, const std::string& source) {
    const CsvTable table = parse_csv(csv_text, source);
    const int date_col = table.column("date");
    if (date_col < 0) throw InvalidInput(source + ": missing column 'date'");
    std::vector<int> cols;
    for (const auto& name : panel_columns()) {
        const int c = table.column(name);
        if (c < 0) throw InvalidInput(source + ": missing column '" + name + "'");
        cols.push_back(c);
    }
    const int currency_col = table.column("currency");

    std::vector<const CsvRow*> rows;
    for (const auto& row : table.rows) {
        if (!currency.empty() && currency_col >= 0 && row.cells[currency_col] != currency) continue;
        rows.push_back(&row);
    }
    if (rows.empty()) throw InvalidInput(source + ": no rows" + (currency.empty() ? "" : " for " + currency));

    FxPanel panel;
    panel.currency = currency;
    const auto n = static_cast<Eigen::Index>(rows.size());
    for (int c = 0; c < 5; ++c) series_of(panel, c).resize(n);
    for (Eigen::Index t = 0; t < n; ++t) {
        const CsvRow& row = *rows[t];
        const std::string& date = row.cells[date_col];
        if (!valid_month(date)) {
            throw InvalidInput(source + ":" + std::to_string(row.line) + ": date '" + date +
                               "' is not yyyy-mm");
        }
        if (!panel.dates.empty() && date <= panel.dates.back()) {
            throw InvalidInput(source + ":" + std::to_string(row.line) + ": date " + date +
                               (date == panel.dates.back() ? " is duplicated" : " is out of order"));
        }
        panel.dates.push_back(date);
        for (int c = 0; c < 5; ++c) {
            const std::string& cell = row.cells[cols[c]];
            const std::string& name = panel_columns()[c];
            series_of(panel, c)(t) = is_missing_cell(cell) ? kNaN : parse_number(cell, row.line, name);
            if (std::isinf(series_of(panel, c)(t))) {
                throw InvalidInput(source + ":" + std::to_string(row.line) + ": infinite value in " + name);
            }
        }
    }
    return panel;
}

FxPanel load_panel(const std::filesystem::path& path, const std::string& currency) {
    return parse_panel(read_text_file(path), currency, path.string());
}

Eigen::VectorXd impute_neighborhood(const Eigen::VectorXd& series, const std::vector<int>& gaps,
                                    int half_width) {
    if (half_width < 1) throw InvalidInput("impute_neighborhood: half_width must be >= 1");
    const auto n = static_cast<int>(series.size());
    std::vector<char> missing(static_cast<std::size_t>(n), 0);
    for (int g : gaps) {
        if (g < 0 || g >= n) throw InvalidInput("impute_neighborhood: gap index out of range");
        missing[g] = 1;
    }
    for (int t = 0; t < n; ++t) {
        if (std::isnan(series(t))) missing[t] = 1;
    }
    Eigen::VectorXd out = series;
    for (int g : gaps) {
        double sum = 0.0;
        int left = 0;
        int right = 0;
        for (int t = g - 1; t >= 0 && left < half_width; --t) {
            if (!missing[t]) {
                sum += series(t);
                ++left;
            }
        }
        for (int t = g + 1; t < n && right < half_width; ++t) {
            if (!missing[t]) {
                sum += series(t);
                ++right;
            }
        }
        if (left == 0 || right == 0) {
            throw InvalidInput("impute_neighborhood: gap at index " + std::to_string(g) +
                               " has no observed neighbour on one side");
        }
        out(g) = sum / (left + right);
    }
    return out;
}

FxPanel impute_panel(const FxPanel& panel, int half_width) {
    FxPanel out = panel;
    for (int c = 0; c < 5; ++c) {
        const auto gaps = panel.gaps(panel_columns()[c]);
        if (!gaps.empty()) series_of(out, c) = impute_neighborhood(series_of(panel, c), gaps, half_width);
    }
    return out;
}

RegressionDataset build_regression(const FxPanel& panel, int k) {
    if (k < 1) throw InvalidInput("build_regression: horizon must be >= 1");
    const int n = panel.size();
    if (n - k < 3) {
        throw InvalidInput("build_regression: panel of length " + std::to_string(n) +
                           " is too short for horizon " + std::to_string(k));
    }
    const Eigen::VectorXd z = panel.deviation();
    RegressionDataset data;
    data.y = panel.s.tail(n - k) - panel.s.head(n - k);
    data.X.resize(n - k, 2);
    data.X.col(0).setOnes();
    data.X.col(1) = z.head(n - k);
    data.X_future.resize(k, 2);
    data.X_future.col(0).setOnes();
    data.X_future.col(1) = z.tail(k);
    return data;
}

FxPanel synthetic_panel(const SyntheticPanelSpec& spec) {
    if (spec.length < 20) throw InvalidInput("synthetic_panel: length must be >= 20");
    if (!(std::abs(spec.deviation_ar) < 1.0)) throw InvalidInput("synthetic_panel: |deviation_ar| must be < 1");
    Rng rng(derive_seed(spec.seed, 0xf7));
    std::normal_distribution<double> normal(0.0, 1.0);
    const int n = spec.length;

    const Eigen::VectorXd e = simulate_errors(spec.error, n, rng);
    const Eigen::VectorXd sigma = spec.volatility == VolatilityKind::Fixed
                                      ? Eigen::VectorXd::Ones(n)
                                      : Eigen::VectorXd(sinusoidal_variance(n).cwiseSqrt());

    Eigen::VectorXd z(n);
    z(0) = spec.deviation_sd / std::sqrt(1.0 - spec.deviation_ar * spec.deviation_ar) * normal(rng);
    for (int t = 1; t < n; ++t) z(t) = spec.deviation_ar * z(t - 1) + spec.deviation_sd * normal(rng);

    FxPanel p;
    p.currency = "SYN";
    p.s.resize(n);
    p.s(0) = 0.0;
    for (int t = 1; t < n; ++t) {
        p.s(t) = p.s(t - 1) + spec.alpha + spec.beta * z(t - 1) + spec.noise_scale * sigma(t) * e(t);
    }
    // Split the fundamental across the four series so that f = m - m* - (y - y*).
    p.m_star = Eigen::VectorXd::Constant(n, 0.25);
    p.y = Eigen::VectorXd::Constant(n, 0.5);
    p.y_star = Eigen::VectorXd::Constant(n, 0.125);
    p.m = p.s + z + p.m_star + (p.y - p.y_star);
    for (int t = 0; t < n; ++t) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d", 1900 + t / 12, t % 12 + 1);
        p.dates.emplace_back(buf);
    }
    return p;
}

std::string panel_to_csv(const FxPanel& panel) {
    std::string out = "date,s,m,m_star,y,y_star\n";
    for (int t = 0; t < panel.size(); ++t) {
        out += panel.dates[static_cast<std::size_t>(t)];
        for (int c = 0; c < 5; ++c) {
            const double v = series_of(panel, c)(t);
            out += ',';
            if (!std::isnan(v)) out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace specreg
