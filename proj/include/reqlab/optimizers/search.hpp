#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "reqlab/optimizers/bitvector.hpp"

namespace reqlab::opt {

/// One optimizer observation. tokens is the rendered prompt's token count
/// (0 when the objective does not track prompts).
struct Trial {
    BitVector bits;
    double score = 0.0;
    std::size_t tokens = 0;
    std::size_t index = 0;
};

using TrialHistory = std::vector<Trial>;

/// Objective over bitvectors. Must be total on {0,1}^n; deterministic
/// objectives make every optimizer here a pure function of (config, seed).
struct Objective {
    std::function<double(const BitVector&)> score;
    /// Optional prompt token counter; may be null.
    std::function<std::size_t(const BitVector&)> tokens;

    Trial evaluate(const BitVector& bits, std::size_t index) const {
        Trial t;
        t.bits = bits;
        t.score = score(bits);
        t.tokens = tokens ? tokens(bits) : 0;
        t.index = index;
        return t;
    }
};

/// True when a should replace b as the incumbent best: higher score wins;
/// ties prefer fewer set bits, then lexicographic order.
bool better_trial(const Trial& a, const Trial& b);

/// Exact argmax by enumeration of all 2^n configurations (ties resolved by
/// the same preference order). Guarded by a bit cap; throws ConfigError
/// beyond it.
Trial exhaustive_optimize(const Objective& objective, std::size_t n,
                          std::size_t max_bits = 20);

/// Uniform random baseline: `budget` distinct bitvectors (duplicates
/// resampled; capped at 2^n), best kept.
struct SearchResult {
    Trial best;
    TrialHistory history;
};

SearchResult random_search(const Objective& objective, std::size_t n,
                           std::size_t budget, std::uint64_t seed);

}  // namespace reqlab::opt
