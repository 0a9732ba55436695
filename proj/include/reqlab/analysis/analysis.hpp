#pragma once

#include <map>
#include <string>
#include <vector>

#include "reqlab/core/types.hpp"
#include "reqlab/harness/harness.hpp"

namespace reqlab::analysis {

// ---------------------------------------------------------------------------
// Discovery model: independent Bernoulli inspections with per-inspection
// success probability p = p_relevant * p_violated * p_noticed.
// ---------------------------------------------------------------------------

struct DiscoveryParams {
    double p_s = 0.95;       // target discovery probability; must be < 1
    double p_relevant = 1.0;
    double p_violated = 1.0;
    double p_noticed = 1.0;

    double per_inspection() const { return p_relevant * p_violated * p_noticed; }
    void validate() const;
};

/// Minimal number of inspections N with discovery probability >= p_s:
/// ceil(log(1-p_s)/log(1-p)), locally adjusted so the straddle property
/// (P(N) >= p_s > P(N-1)) holds exactly as computed by
/// discovery_probability. p_s = 0 gives 0; p = 1 gives 1.
/// Errors: p = 0 with p_s > 0 (undiscoverable), p_s = 1 (unreachable).
std::uint64_t inspections_needed(const DiscoveryParams& params);

/// The raw real-valued solution of the same equation, for plotting curves.
double inspections_needed_real(const DiscoveryParams& params);

/// 1 - (1-p)^N.
double discovery_probability(std::uint64_t n_inspections, const DiscoveryParams& params);

// ---------------------------------------------------------------------------
// One-way ANOVA
// ---------------------------------------------------------------------------

struct AnovaResult {
    double f = 0.0;
    std::size_t df_between = 0;
    std::size_t df_within = 0;
    double p_value = 1.0;
};

/// Standard between/within mean-square ratio with the F-distribution
/// p-value computed via the regularized incomplete beta function
/// (continued fraction, 1e-10 convergence tolerance). Requires >= 2
/// groups, each non-empty, and total n > number of groups.
AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups);

/// Regularized incomplete beta I_x(a, b); exposed for verification.
double regularized_incomplete_beta(double a, double b, double x);

// ---------------------------------------------------------------------------
// Factor analysis over requirement statistics
// ---------------------------------------------------------------------------

enum class Factor { specified, conditional, source, category, model };
Factor factor_from_string(const std::string& s);
std::string to_string(Factor f);

/// Which condition's per-requirement values feed the ANOVA observations.
/// For Factor::specified the side is implied by the factor itself.
enum class Side { specified, unspecified, both };

struct FactorAnalysis {
    Factor factor;
    AnovaResult accuracy;  // outcome: mean accuracy
    AnovaResult sd;        // outcome: SD of accuracy
    std::map<std::string, double> group_mean_accuracy;
    std::map<std::string, double> group_mean_sd;
};

/// Groups per-requirement outcome values by factor level and runs a
/// one-way ANOVA per outcome (mean accuracy and SD). Requirements
/// metadata must cover every requirement id in `stats`; fewer than two
/// factor levels is an error.
FactorAnalysis factor_analysis(const std::vector<harness::RequirementStats>& stats,
                               const std::map<std::string, core::Requirement>& requirements,
                               Factor factor,
                               Side side = Side::both);

// ---------------------------------------------------------------------------
// Empirical CDF
// ---------------------------------------------------------------------------

/// Right-continuous empirical CDF points: sorted distinct values paired
/// with the fraction of observations <= value.
std::vector<std::pair<double, double>> empirical_cdf(const std::vector<double>& values);

}  // namespace reqlab::analysis
