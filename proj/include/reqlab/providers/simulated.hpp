#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "reqlab/providers/provider.hpp"

namespace reqlab::providers {

enum class InterferenceMode { none, linear, exponential };

InterferenceMode interference_mode_from_string(const std::string& s);
std::string to_string(InterferenceMode mode);

/// Per-requirement satisfaction probabilities for the simulated provider,
/// plus an interference model that degrades specified-requirement
/// satisfaction as more requirements are packed into one prompt:
///   decay(m) = 1                      (none)
///            = max(0, 1 - rate*(m-1)) (linear)
///            = exp(-rate*(m-1))       (exponential)
/// where m = number of specified requirements.
///
/// unspecified_prompt_jitter adds a prompt-dependent offset in
/// [-jitter, +jitter] (keyed by prompt and requirement id, clamped to
/// [0,1]) to p_unspecified, emulating the across-prompt variance of
/// unspecified behavior. Zero by default.
struct SatisfactionProfile {
    struct Entry {
        double p_specified = 1.0;
        double p_unspecified = 1.0;
    };

    std::map<std::string, Entry> requirements;
    InterferenceMode mode = InterferenceMode::none;
    double rate = 0.0;
    double unspecified_prompt_jitter = 0.0;

    void validate() const;
    double decay(std::size_t specified_count) const;
};

/// Pure function of (seed, profile, request ids, specified set): draws one
/// Bernoulli per profile requirement, keyed by hash(seed, prompt_id,
/// example_id, requirement_id), and returns output text whose final line
/// is the machine-readable manifest "SATISFIED: id1,id2,...".
/// Throws IntegrityError when specified_ids contains an id the profile
/// does not cover.
std::string simulate(const CompletionRequest& request,
                     const SatisfactionProfile& profile,
                     const std::vector<std::string>& specified_ids,
                     std::uint64_t seed);

/// The per-requirement satisfaction probability simulate() uses for one
/// cell; exposed so tests can compare observed frequencies against the
/// analytic value.
double simulated_probability(const SatisfactionProfile& profile,
                             const std::string& requirement_id,
                             const std::string& prompt_id,
                             bool specified,
                             std::size_t specified_count,
                             std::uint64_t seed);

/// Deterministic provider backed by a SatisfactionProfile. Pure and
/// lock-free; safe from any number of workers.
class SimulatedProvider final : public Provider {
public:
    SimulatedProvider(SatisfactionProfile profile, std::uint64_t seed,
                      std::string name = "simulated");

    std::string name() const override { return name_; }
    std::string fingerprint(const CompletionRequest& request) const override;
    std::string cache_salt(const CompletionRequest& request) const override;

    const SatisfactionProfile& profile() const { return profile_; }
    std::uint64_t seed() const { return seed_; }

private:
    std::string do_complete(const CompletionRequest& request) override;

    SatisfactionProfile profile_;
    std::uint64_t seed_;
    std::string name_;
};

}  // namespace reqlab::providers
