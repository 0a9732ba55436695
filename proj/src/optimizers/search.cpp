#include "reqlab/optimizers/search.hpp"

#include <set>

#include "reqlab/errors.hpp"

namespace reqlab::opt {

bool better_trial(const Trial& a, const Trial& b) {
    if (a.score != b.score) return a.score > b.score;
    return preferred_bits(a.bits, b.bits);
}

Trial exhaustive_optimize(const Objective& objective, std::size_t n,
                          std::size_t max_bits) {
    if (n < 1) throw ConfigError("exhaustive_optimize: n must be >= 1");
    if (n > max_bits) {
        throw ConfigError("exhaustive_optimize: n exceeds the " +
                          std::to_string(max_bits) + "-bit cap");
    }
    Trial best;
    bool have_best = false;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t v = 0; v < total; ++v) {
        Trial t = objective.evaluate(unpack_bits(v, n), static_cast<std::size_t>(v));
        if (!have_best || better_trial(t, best)) {
            best = std::move(t);
            have_best = true;
        }
    }
    return best;
}

SearchResult random_search(const Objective& objective, std::size_t n,
                           std::size_t budget, std::uint64_t seed) {
    if (n < 1) throw ConfigError("random_search: n must be >= 1");
    if (budget < 1) throw ConfigError("random_search: budget must be >= 1");

    const bool small_space = n < 63;
    const std::uint64_t space = small_space ? (std::uint64_t{1} << n) : 0;
    if (small_space && budget > space) budget = static_cast<std::size_t>(space);

    util::SplitMix64 rng(seed);
    std::set<BitVector> seen;
    SearchResult result;
    while (result.history.size() < budget) {
        BitVector bits = random_bits(n, rng);
        if (!seen.insert(bits).second) continue;  // duplicate: resample
        Trial t = objective.evaluate(bits, result.history.size());
        if (result.history.empty() || better_trial(t, result.best)) {
            result.best = t;
        }
        result.history.push_back(std::move(t));
    }
    return result;
}

}  // namespace reqlab::opt
