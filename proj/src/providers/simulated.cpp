#include "reqlab/providers/simulated.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "reqlab/util/rng.hpp"

namespace reqlab::providers {

InterferenceMode interference_mode_from_string(const std::string& s) {
    if (s == "none") return InterferenceMode::none;
    if (s == "linear") return InterferenceMode::linear;
    if (s == "exponential") return InterferenceMode::exponential;
    throw ConfigError("unknown interference mode: " + s);
}

std::string to_string(InterferenceMode mode) {
    switch (mode) {
        case InterferenceMode::none: return "none";
        case InterferenceMode::linear: return "linear";
        case InterferenceMode::exponential: return "exponential";
    }
    return "none";
}

void SatisfactionProfile::validate() const {
    for (const auto& [id, entry] : requirements) {
        if (entry.p_specified < 0.0 || entry.p_specified > 1.0 ||
            entry.p_unspecified < 0.0 || entry.p_unspecified > 1.0) {
            throw ConfigError("profile probabilities for " + id + " must be in [0,1]");
        }
    }
    if (rate < 0.0) throw ConfigError("interference rate must be >= 0");
    if (unspecified_prompt_jitter < 0.0) {
        throw ConfigError("unspecified_prompt_jitter must be >= 0");
    }
}

double SatisfactionProfile::decay(std::size_t specified_count) const {
    const double m = static_cast<double>(specified_count);
    switch (mode) {
        case InterferenceMode::none:
            return 1.0;
        case InterferenceMode::linear:
            return std::max(0.0, 1.0 - rate * (m - 1.0));
        case InterferenceMode::exponential:
            return std::exp(-rate * (m - 1.0));
    }
    return 1.0;
}

namespace {

std::uint64_t cell_hash(std::uint64_t seed, std::string_view tag,
                        const std::string& prompt_id, const std::string& example_id,
                        const std::string& requirement_id) {
    std::uint64_t h = util::fnv1a64_chain(util::kFnvOffset, std::to_string(seed));
    h = util::fnv1a64_chain(h, tag);
    h = util::fnv1a64_chain(h, prompt_id);
    h = util::fnv1a64_chain(h, example_id);
    h = util::fnv1a64_chain(h, requirement_id);
    return h;
}

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

double simulated_probability(const SatisfactionProfile& profile,
                             const std::string& requirement_id,
                             const std::string& prompt_id,
                             bool specified,
                             std::size_t specified_count,
                             std::uint64_t seed) {
    const auto it = profile.requirements.find(requirement_id);
    if (it == profile.requirements.end()) {
        throw IntegrityError("profile does not cover requirement: " + requirement_id);
    }
    if (specified) {
        return clamp01(it->second.p_specified * profile.decay(specified_count));
    }
    double p = it->second.p_unspecified;
    if (profile.unspecified_prompt_jitter > 0.0) {
        const double u =
            util::unit_from_hash(cell_hash(seed, "jitter", prompt_id, "", requirement_id));
        p += profile.unspecified_prompt_jitter * (2.0 * u - 1.0);
    }
    return clamp01(p);
}

std::string simulate(const CompletionRequest& request,
                     const SatisfactionProfile& profile,
                     const std::vector<std::string>& specified_ids,
                     std::uint64_t seed) {
    profile.validate();
    std::set<std::string> specified(specified_ids.begin(), specified_ids.end());
    for (const auto& id : specified) {
        if (profile.requirements.find(id) == profile.requirements.end()) {
            throw IntegrityError("specified requirement not covered by profile: " + id);
        }
    }

    std::vector<std::string> satisfied;
    for (const auto& [id, _] : profile.requirements) {
        const bool is_specified = specified.count(id) > 0;
        const double p = simulated_probability(profile, id, request.prompt_id,
                                               is_specified, specified.size(), seed);
        const double u = util::unit_from_hash(
            cell_hash(seed, "draw", request.prompt_id, request.example_id, id));
        if (u < p) satisfied.push_back(id);
    }

    std::ostringstream out;
    out << "Simulated response (prompt " << request.prompt_id << ", example "
        << request.example_id << ").\n";
    out << "SATISFIED: ";
    for (std::size_t i = 0; i < satisfied.size(); ++i) {
        if (i) out << ",";
        out << satisfied[i];
    }
    return out.str();
}

SimulatedProvider::SimulatedProvider(SatisfactionProfile profile, std::uint64_t seed,
                                     std::string name)
    : profile_(std::move(profile)), seed_(seed), name_(std::move(name)) {
    profile_.validate();
}

std::string SimulatedProvider::fingerprint(const CompletionRequest& request) const {
    std::uint64_t h = util::fnv1a64_chain(util::kFnvOffset, request.model_id);
    h = util::fnv1a64_chain(h, params_digest_text(request.params));
    h = util::fnv1a64_chain(h, std::to_string(seed_));
    return name_ + ":" + util::to_hex(h);
}

std::string SimulatedProvider::cache_salt(const CompletionRequest& request) const {
    // Output depends on the draw keys and the profile, not just the text.
    std::uint64_t h = util::fnv1a64_chain(util::kFnvOffset, request.prompt_id);
    h = util::fnv1a64_chain(h, request.example_id);
    for (const auto& id : request.specified_ids) h = util::fnv1a64_chain(h, id);
    h = util::fnv1a64_chain(h, std::to_string(seed_));
    return util::to_hex(h);
}

std::string SimulatedProvider::do_complete(const CompletionRequest& request) {
    return simulate(request, profile_, request.specified_ids, seed_);
}

}  // namespace reqlab::providers
