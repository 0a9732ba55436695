#pragma once

#include <cstdint>

#include "reqlab/optimizers/search.hpp"

namespace reqlab::opt {

/// Tree-structured Parzen Estimator over binary configurations.
///
/// After n_startup uniform random trials, each step splits the history
/// (sorted by score) into the top ceil(gamma*t) "good" trials and the
/// rest, fits per-dimension Bernoulli densities l (good) and g (bad) with
/// prior_weight pseudo-counts, samples n_candidates bitvectors from l,
/// ranks them by sum_i log(l_i(x_i)/g_i(x_i)), and evaluates the
/// best-ranked candidate not yet tried. Ties prefer fewer set bits, then
/// lexicographic order, which is what steers the search toward shorter
/// prompts at equal accuracy.
struct TpeConfig {
    std::size_t budget = 9;        // total objective evaluations
    std::size_t n_startup = 3;     // uniform random warmup trials
    double gamma = 0.25;           // good-fraction quantile in (0,1)
    std::size_t n_candidates = 24; // samples ranked per step
    double prior_weight = 1.0;     // Bernoulli smoothing pseudo-count
    std::uint64_t seed = 0;

    void validate() const;
};

struct TpeResult {
    Trial best;
    TrialHistory history;  // in evaluation order; never repeats a bitvector
};

/// Deterministic given (objective, config). When the space is exhausted
/// before the budget (2^n small), terminates early with the exact optimum
/// found so far -- with budget >= 2^n this is the exhaustive optimum.
TpeResult tpe_optimize(const Objective& objective, std::size_t n, const TpeConfig& config);

}  // namespace reqlab::opt
