#include "reqlab/optimizers/tpe.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "reqlab/errors.hpp"

namespace reqlab::opt {

void TpeConfig::validate() const {
    if (budget < 1) throw ConfigError("tpe: budget must be >= 1");
    if (n_startup > budget) throw ConfigError("tpe: n_startup must be <= budget");
    if (gamma <= 0.0 || gamma >= 1.0) throw ConfigError("tpe: gamma must be in (0,1)");
    if (n_candidates < 1) throw ConfigError("tpe: n_candidates must be >= 1");
    if (prior_weight <= 0.0) throw ConfigError("tpe: prior_weight must be > 0");
}

namespace {

/// Deterministic fallback when every sampled candidate was already tried:
/// the first untried bitvector in packed-integer order (n <= 30), else
/// fresh uniform samples until one is new.
BitVector first_untried(const std::set<BitVector>& seen, std::size_t n,
                        util::SplitMix64& rng) {
    if (n <= 30) {
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t v = 0; v < total; ++v) {
            BitVector bits = unpack_bits(v, n);
            if (!seen.count(bits)) return bits;
        }
        throw IntegrityError("tpe: space exhausted");  // caller checks first
    }
    for (;;) {
        BitVector bits = random_bits(n, rng);
        if (!seen.count(bits)) return bits;
    }
}

bool space_exhausted(const std::set<BitVector>& seen, std::size_t n) {
    return n <= 30 && seen.size() == (std::uint64_t{1} << n);
}

}  // namespace

TpeResult tpe_optimize(const Objective& objective, std::size_t n, const TpeConfig& config) {
    if (n < 1) throw ConfigError("tpe: n must be >= 1");
    config.validate();

    util::SplitMix64 rng(config.seed);
    TpeResult result;
    std::set<BitVector> seen;

    auto evaluate = [&](const BitVector& bits) {
        Trial t = objective.evaluate(bits, result.history.size());
        seen.insert(bits);
        if (result.history.empty() || better_trial(t, result.best)) {
            result.best = t;
        }
        result.history.push_back(std::move(t));
    };

    // Warmup: uniform random distinct bitvectors.
    while (result.history.size() < config.n_startup &&
           result.history.size() < config.budget) {
        if (space_exhausted(seen, n)) return result;
        BitVector bits = random_bits(n, rng);
        if (seen.count(bits)) continue;
        evaluate(bits);
    }

    while (result.history.size() < config.budget) {
        if (space_exhausted(seen, n)) return result;

        // Split history into good/bad by score quantile.
        std::vector<const Trial*> ordered;
        ordered.reserve(result.history.size());
        for (const auto& t : result.history) ordered.push_back(&t);
        std::sort(ordered.begin(), ordered.end(),
                  [](const Trial* a, const Trial* b) { return better_trial(*a, *b); });
        const std::size_t n_good = static_cast<std::size_t>(
            std::ceil(config.gamma * static_cast<double>(ordered.size())));

        // Smoothed per-dimension Bernoulli densities.
        std::vector<double> l(n), g(n);
        const double w = config.prior_weight;
        const double good_total = static_cast<double>(n_good) + 2.0 * w;
        const double bad_count = static_cast<double>(ordered.size() - n_good);
        const double bad_total = bad_count + 2.0 * w;
        for (std::size_t i = 0; i < n; ++i) {
            double good_ones = 0.0, bad_ones = 0.0;
            for (std::size_t k = 0; k < ordered.size(); ++k) {
                if (!ordered[k]->bits[i]) continue;
                (k < n_good ? good_ones : bad_ones) += 1.0;
            }
            l[i] = (good_ones + w) / good_total;
            g[i] = (bad_ones + w) / bad_total;
        }

        // Sample candidates from l, rank by the density ratio.
        struct Candidate {
            BitVector bits;
            double ratio;
        };
        std::vector<Candidate> candidates;
        std::set<BitVector> sampled;
        for (std::size_t c = 0; c < config.n_candidates; ++c) {
            BitVector bits(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                bits[i] = rng.next_bernoulli(l[i]) ? 1 : 0;
            }
            if (!sampled.insert(bits).second) continue;
            double ratio = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double li = bits[i] ? l[i] : 1.0 - l[i];
                const double gi = bits[i] ? g[i] : 1.0 - g[i];
                ratio += std::log(li) - std::log(gi);
            }
            candidates.push_back({std::move(bits), ratio});
        }
        std::sort(candidates.begin(), candidates.end(),
                  [](const Candidate& a, const Candidate& b) {
                      if (a.ratio != b.ratio) return a.ratio > b.ratio;
                      return preferred_bits(a.bits, b.bits);
                  });

        const BitVector* pick = nullptr;
        for (const auto& candidate : candidates) {
            if (!seen.count(candidate.bits)) {
                pick = &candidate.bits;
                break;
            }
        }
        BitVector next = pick ? *pick : first_untried(seen, n, rng);
        evaluate(next);
    }
    return result;
}

}  // namespace reqlab::opt
