#include "specreg/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "specreg/error.hpp"

namespace specreg {
namespace {

constexpr double kEulerGamma = 0.57721566490153286;
const double kLogSqrtTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);

double normal_log_pdf(double x, double mean, double sd) {
    const double z = (x - mean) / sd;
    return -0.5 * z * z - std::log(sd) - kLogSqrtTwoPi;
}

}  // namespace

void MixtureTable::validate() const {
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.p >= 0.0) || !std::isfinite(c.p)) throw InvalidInput("mixture table: negative weight");
        if (!(c.v > 0.0) || !std::isfinite(c.v)) throw InvalidInput("mixture table: non-positive sd");
        if (!std::isfinite(c.k)) throw InvalidInput("mixture table: non-finite mean");
        total += c.p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "mixture table: weights sum to " << total << ", expected 1";
        throw InvalidInput(os.str());
    }
}

MixtureTable MixtureTable::standard() {
    // Keep in sync with data/log_exp_mixture.json.
    MixtureTable t;
    t.version = "log-exp1-5c-em-v1";
    t.components = {{
        {0.016076, -4.033330, 1.925866},
        {0.120163, -2.315647, 1.213278},
        {0.321988, -1.027523, 0.841512},
        {0.385627, -0.049316, 0.616203},
        {0.156146, 0.741289, 0.470708},
    }};
    return t;
}

MixtureTable MixtureTable::from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("mixture table: ") + e.what());
    }
    const auto& rows = doc.at("components");
    if (!rows.is_array() || rows.size() != kComponents) {
        throw InvalidInput("mixture table: expected exactly 5 components");
    }
    MixtureTable t;
    t.version = doc.value("version", "");
    for (int l = 0; l < kComponents; ++l) {
        t.components[l] = {rows[l].at("p").get<double>(), rows[l].at("k").get<double>(),
                           rows[l].at("v").get<double>()};
    }
    t.validate();
    return t;
}

MixtureTable MixtureTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("mixture table: cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string MixtureTable::to_json_text() const {
    nlohmann::json doc;
    doc["version"] = version;
    doc["components"] = nlohmann::json::array();
    for (const auto& c : components) doc["components"].push_back({{"p", c.p}, {"k", c.k}, {"v", c.v}});
    return doc.dump(2);
}

double mixture_log_density(double xi, const MixtureTable& table) {
    std::array<double, MixtureTable::kComponents> terms{};
    double top = -std::numeric_limits<double>::infinity();
    for (int l = 0; l < MixtureTable::kComponents; ++l) {
        const auto& c = table.components[l];
        terms[l] = c.p > 0.0 ? std::log(c.p) + normal_log_pdf(xi, c.k, c.v)
                             : -std::numeric_limits<double>::infinity();
        top = std::max(top, terms[l]);
    }
    if (!std::isfinite(top)) return top;
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - top);
    return top + std::log(sum);
}

std::array<double, MixtureTable::kComponents> label_log_probabilities(double residual,
                                                                      const MixtureTable& table) {
    std::array<double, MixtureTable::kComponents> logw{};
    for (int l = 0; l < MixtureTable::kComponents; ++l) {
        const auto& c = table.components[l];
        logw[l] = c.p > 0.0 ? std::log(c.p) + normal_log_pdf(residual, c.k, c.v)
                            : -std::numeric_limits<double>::infinity();
    }
    const double top = *std::max_element(logw.begin(), logw.end());
    if (!std::isfinite(top)) {
        throw NumericError("label weights underflowed for residual " + std::to_string(residual));
    }
    double sum = 0.0;
    for (double w : logw) sum += std::exp(w - top);
    const double log_norm = top + std::log(sum);
    for (double& w : logw) w -= log_norm;
    return logw;
}

LabelVector sample_labels(const Eigen::Ref<const Eigen::VectorXd>& log_periodogram,
                          const Eigen::Ref<const Eigen::VectorXd>& log_spectrum,
                          const MixtureTable& table, Rng& rng) {
    if (log_periodogram.size() != log_spectrum.size()) {
        throw InvalidInput("sample_labels: phi and theta lengths differ");
    }
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    LabelVector labels(static_cast<std::size_t>(log_periodogram.size()));
    for (Eigen::Index s = 0; s < log_periodogram.size(); ++s) {
        const auto logp = label_log_probabilities(log_periodogram(s) - log_spectrum(s), table);
        const double u = unif(rng);
        double cdf = 0.0;
        int pick = MixtureTable::kComponents - 1;
        for (int l = 0; l < MixtureTable::kComponents; ++l) {
            cdf += std::exp(logp[l]);
            if (u < cdf) {
                pick = l;
                break;
            }
        }
        // u can exceed a cdf that rounds just below 1; fall back to the last live component.
        while (pick > 0 && !std::isfinite(logp[pick])) --pick;
        labels[static_cast<std::size_t>(s)] = pick;
    }
    return labels;
}

double sample_mixture(const MixtureTable& table, Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double u = unif(rng);
    double cdf = 0.0;
    int pick = MixtureTable::kComponents - 1;
    for (int l = 0; l < MixtureTable::kComponents; ++l) {
        cdf += table.components[l].p;
        if (u < cdf) {
            pick = l;
            break;
        }
    }
    while (pick > 0 && table.components[pick].p <= 0.0) --pick;
    const auto& c = table.components[pick];
    return c.k + c.v * normal(rng);
}

MixtureDiagnostics validate_mixture(const MixtureTable& table, Rng& rng, int draws) {
    table.validate();
    if (draws < 2) throw InvalidInput("validate_mixture: need at least 2 draws");
    std::vector<double> mix(static_cast<std::size_t>(draws));
    std::vector<double> ref(static_cast<std::size_t>(draws));
    std::exponential_distribution<double> expo(1.0);
    for (auto& x : mix) x = sample_mixture(table, rng);
    for (auto& x : ref) x = std::log(expo(rng));

    MixtureDiagnostics d;
    for (double x : mix) d.mixture_mean += x;
    for (double x : ref) d.reference_mean += x;
    d.mixture_mean /= draws;
    d.reference_mean /= draws;
    d.mean_error = d.mixture_mean + kEulerGamma;

    std::sort(mix.begin(), mix.end());
    std::sort(ref.begin(), ref.end());
    std::size_t i = 0;
    std::size_t j = 0;
    const auto n = static_cast<double>(draws);
    while (i < mix.size() && j < ref.size()) {
        const double x = std::min(mix[i], ref[j]);
        while (i < mix.size() && mix[i] <= x) ++i;
        while (j < ref.size() && ref[j] <= x) ++j;
        d.ks_statistic = std::max(d.ks_statistic, std::abs(i / n - j / n));
    }
    return d;
}

}  // namespace specreg
