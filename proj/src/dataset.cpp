#include "specreg/dataset.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "specreg/csv.hpp"
#include "specreg/error.hpp"

namespace specreg {

void RegressionDataset::validate() const {
    if (y.size() == 0) throw InvalidInput("dataset: empty response");
    if (X.rows() != y.size()) {
        throw InvalidInput("dataset: X has " + std::to_string(X.rows()) + " rows but y has " +
                           std::to_string(y.size()));
    }
    if (X.cols() == 0) throw InvalidInput("dataset: design matrix has no columns");
    if (X_future.size() > 0 && X_future.cols() != X.cols()) {
        throw InvalidInput("dataset: future covariates have " + std::to_string(X_future.cols()) +
                           " columns, expected " + std::to_string(X.cols()));
    }
    for (Eigen::Index t = 0; t < y.size(); ++t) {
        bool ok = std::isfinite(y(t));
        for (Eigen::Index j = 0; j < X.cols(); ++j) ok = ok && std::isfinite(X(t, j));
        if (!ok) throw InvalidInput("dataset: non-finite value in row " + std::to_string(t + 1));
    }
    for (Eigen::Index t = 0; t < X_future.rows(); ++t) {
        for (Eigen::Index j = 0; j < X_future.cols(); ++j) {
            if (!std::isfinite(X_future(t, j))) {
                throw InvalidInput("dataset: non-finite future covariate in row " +
                                   std::to_string(t + 1));
            }
        }
    }
}

RegressionDataset parse_dataset_csv(const std::string& text, bool intercept, const std::string& source) {
    const CsvTable table = parse_csv(text, source);
    const int ycol = table.column("y");
    if (ycol < 0) throw InvalidInput(source + ": missing column 'y'");
    std::vector<int> xcols;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (static_cast<int>(c) != ycol) xcols.push_back(static_cast<int>(c));
    }
    const int p = static_cast<int>(xcols.size()) + (intercept ? 1 : 0);
    if (p == 0) throw InvalidInput(source + ": no covariates");

    std::size_t observed = 0;
    while (observed < table.rows.size() && !table.rows[observed].cells[ycol].empty()) ++observed;
    for (std::size_t r = observed; r < table.rows.size(); ++r) {
        if (!table.rows[r].cells[ycol].empty()) {
            throw InvalidInput(source + ":" + std::to_string(table.rows[r].line) +
                               ": observed y after a future row (future rows must be trailing)");
        }
    }

    const auto fill = [&](std::size_t r, Eigen::MatrixXd& dest, Eigen::Index i) {
        auto row = dest.row(i);
        const CsvRow& src = table.rows[r];
        int j = 0;
        if (intercept) row(j++) = 1.0;
        for (int c : xcols) {
            const std::string& cell = src.cells[c];
            if (is_missing_cell(cell)) {
                throw InvalidInput(source + ":" + std::to_string(src.line) + ": missing value in column " +
                                   table.header[c]);
            }
            const double v = parse_number(cell, src.line, table.header[c]);
            if (!std::isfinite(v)) {
                throw InvalidInput(source + ":" + std::to_string(src.line) + ": non-finite value in column " +
                                   table.header[c]);
            }
            row(j++) = v;
        }
    };

    RegressionDataset data;
    data.y.resize(static_cast<Eigen::Index>(observed));
    data.X.resize(static_cast<Eigen::Index>(observed), p);
    data.X_future.resize(static_cast<Eigen::Index>(table.rows.size() - observed), p);
    for (std::size_t r = 0; r < observed; ++r) {
        const CsvRow& src = table.rows[r];
        const double y = parse_number(src.cells[ycol], src.line, "y");
        if (!std::isfinite(y)) {
            throw InvalidInput(source + ":" + std::to_string(src.line) + ": non-finite value in column y");
        }
        data.y(static_cast<Eigen::Index>(r)) = y;
        fill(r, data.X, static_cast<Eigen::Index>(r));
    }
    for (std::size_t r = observed; r < table.rows.size(); ++r) {
        fill(r, data.X_future, static_cast<Eigen::Index>(r - observed));
    }
    data.validate();
    return data;
}

RegressionDataset load_dataset(const std::filesystem::path& path, bool intercept) {
    return parse_dataset_csv(read_text_file(path), intercept, path.string());
}

}  // namespace specreg
