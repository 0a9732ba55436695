#include "reqlab/analysis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reqlab/errors.hpp"

namespace reqlab::analysis {

void DiscoveryParams::validate() const {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(p_s) || !in_unit(p_relevant) || !in_unit(p_violated) || !in_unit(p_noticed)) {
        throw ConfigError("discovery probabilities must be in [0,1]");
    }
}

double discovery_probability(std::uint64_t n_inspections, const DiscoveryParams& params) {
    params.validate();
    const double p = params.per_inspection();
    return 1.0 - std::pow(1.0 - p, static_cast<double>(n_inspections));
}

double inspections_needed_real(const DiscoveryParams& params) {
    params.validate();
    const double p = params.per_inspection();
    if (params.p_s == 0.0) return 0.0;
    if (params.p_s >= 1.0) {
        throw ConfigError("p_s = 1 is unreachable in finitely many inspections");
    }
    if (p <= 0.0) {
        throw ConfigError("requirement is undiscoverable: per-inspection probability is 0");
    }
    if (p >= 1.0) return 1.0;
    return std::log(1.0 - params.p_s) / std::log(1.0 - p);
}

std::uint64_t inspections_needed(const DiscoveryParams& params) {
    params.validate();
    if (params.p_s == 0.0) return 0;
    const double real = inspections_needed_real(params);
    auto n = static_cast<std::uint64_t>(std::ceil(real - 1e-9));
    // Local adjustment pins the straddle property against the same
    // discovery_probability the callers check.
    while (discovery_probability(n, params) < params.p_s) ++n;
    while (n >= 1 && discovery_probability(n - 1, params) >= params.p_s) --n;
    return n;
}

// ---------------------------------------------------------------------------
// Regularized incomplete beta via Lentz's continued fraction.
// ---------------------------------------------------------------------------

namespace {

constexpr double kBetaTolerance = 1e-10;
constexpr int kBetaMaxIterations = 500;

double beta_continued_fraction(double a, double b, double x) {
    const double tiny = 1e-300;
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kBetaTolerance) return h;
    }
    throw Error("incomplete beta did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw ConfigError("incomplete beta needs x in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          b * std::log(1.0 - x) + a * std::log(x)) *
                     beta_continued_fraction(b, a, 1.0 - x) / b;
}

AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) {
        throw ConfigError("one_way_anova needs at least 2 groups");
    }
    std::size_t n_total = 0;
    double grand_sum = 0.0;
    for (const auto& group : groups) {
        if (group.empty()) throw ConfigError("one_way_anova: empty group");
        n_total += group.size();
        for (double v : group) grand_sum += v;
    }
    const std::size_t k = groups.size();
    if (n_total <= k) {
        throw ConfigError("one_way_anova: degenerate degrees of freedom");
    }
    const double grand_mean = grand_sum / static_cast<double>(n_total);

    double ss_between = 0.0, ss_within = 0.0;
    for (const auto& group : groups) {
        double sum = 0.0;
        for (double v : group) sum += v;
        const double mean = sum / static_cast<double>(group.size());
        ss_between += static_cast<double>(group.size()) * (mean - grand_mean) * (mean - grand_mean);
        for (double v : group) ss_within += (v - mean) * (v - mean);
    }

    AnovaResult result;
    result.df_between = k - 1;
    result.df_within = n_total - k;

    if (ss_between <= 0.0) {
        result.f = 0.0;
        result.p_value = 1.0;
        return result;
    }
    const double ms_between = ss_between / static_cast<double>(result.df_between);
    const double ms_within = ss_within / static_cast<double>(result.df_within);
    if (ms_within <= 0.0) {
        result.f = std::numeric_limits<double>::infinity();
        result.p_value = 0.0;
        return result;
    }
    result.f = ms_between / ms_within;

    const double d1 = static_cast<double>(result.df_between);
    const double d2 = static_cast<double>(result.df_within);
    const double x = d2 / (d2 + d1 * result.f);
    result.p_value = regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, x);
    return result;
}

Factor factor_from_string(const std::string& s) {
    if (s == "specified") return Factor::specified;
    if (s == "conditional") return Factor::conditional;
    if (s == "source") return Factor::source;
    if (s == "category") return Factor::category;
    if (s == "model") return Factor::model;
    throw ConfigError("unknown factor: " + s);
}

std::string to_string(Factor f) {
    switch (f) {
        case Factor::specified: return "specified";
        case Factor::conditional: return "conditional";
        case Factor::source: return "source";
        case Factor::category: return "category";
        case Factor::model: return "model";
    }
    return "specified";
}

namespace {

struct Observation {
    std::string level;
    double accuracy;
    double sd;
};

void collect_side(const harness::RequirementStats& row, bool specified_side,
                  const std::string& level, std::vector<Observation>& out) {
    const auto& acc = specified_side ? row.acc_specified : row.acc_unspecified;
    const auto& sd = specified_side ? row.sd_specified : row.sd_unspecified;
    if (acc && sd) out.push_back({level, *acc, *sd});
}

}  // namespace

FactorAnalysis factor_analysis(const std::vector<harness::RequirementStats>& stats,
                               const std::map<std::string, core::Requirement>& requirements,
                               Factor factor,
                               Side side) {
    std::vector<Observation> observations;
    for (const auto& row : stats) {
        std::string level;
        if (factor != Factor::specified && factor != Factor::model) {
            auto it = requirements.find(row.requirement_id);
            if (it == requirements.end()) {
                throw IntegrityError("factor_analysis: no metadata for requirement " +
                                     row.requirement_id);
            }
            const core::Requirement& req = it->second;
            switch (factor) {
                case Factor::conditional:
                    level = core::to_string(req.scope);
                    break;
                case Factor::source:
                    level = core::to_string(req.source);
                    break;
                case Factor::category:
                    level = core::to_string(req.category);
                    break;
                default:
                    break;
            }
        }
        switch (factor) {
            case Factor::specified:
                collect_side(row, true, "specified", observations);
                collect_side(row, false, "unspecified", observations);
                break;
            case Factor::model:
                level = row.model_id;
                [[fallthrough]];
            default: {
                if (side == Side::specified || side == Side::both) {
                    collect_side(row, true, level, observations);
                }
                if (side == Side::unspecified || side == Side::both) {
                    collect_side(row, false, level, observations);
                }
            }
        }
    }

    std::map<std::string, std::vector<double>> acc_groups, sd_groups;
    for (const auto& obs : observations) {
        acc_groups[obs.level].push_back(obs.accuracy);
        sd_groups[obs.level].push_back(obs.sd);
    }
    if (acc_groups.size() < 2) {
        throw ConfigError("factor_analysis: factor '" + to_string(factor) +
                          "' has fewer than 2 levels in the data");
    }

    FactorAnalysis analysis;
    analysis.factor = factor;
    std::vector<std::vector<double>> acc_list, sd_list;
    for (const auto& [level, values] : acc_groups) {
        acc_list.push_back(values);
        double sum = 0.0;
        for (double v : values) sum += v;
        analysis.group_mean_accuracy[level] = sum / static_cast<double>(values.size());
    }
    for (const auto& [level, values] : sd_groups) {
        sd_list.push_back(values);
        double sum = 0.0;
        for (double v : values) sum += v;
        analysis.group_mean_sd[level] = sum / static_cast<double>(values.size());
    }
    analysis.accuracy = one_way_anova(acc_list);
    analysis.sd = one_way_anova(sd_list);
    return analysis;
}

std::vector<std::pair<double, double>> empirical_cdf(const std::vector<double>& values) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> points;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        points.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
    }
    return points;
}

}  // namespace reqlab::analysis
