#include "reqlab/validators/audit.hpp"

#include <algorithm>
#include <cmath>

#include "reqlab/errors.hpp"
#include "reqlab/util/rng.hpp"

namespace reqlab::validators {

namespace {

/// First k of `keys` after a seeded Fisher-Yates shuffle; keys are sorted
/// first so the draw depends only on (contents, seed).
std::vector<core::VerdictKey> sample_k(std::vector<core::VerdictKey> keys,
                                       std::size_t k, std::uint64_t seed) {
    std::sort(keys.begin(), keys.end());
    util::shuffle(keys, seed);
    if (keys.size() > k) keys.resize(k);
    return keys;
}

}  // namespace

std::vector<core::VerdictKey> stratified_audit_sample(
    const std::vector<core::VerdictRecord>& verdicts,
    std::size_t per_requirement,
    std::size_t positives,
    std::uint64_t seed) {
    if (positives > per_requirement) {
        throw ConfigError("positives cannot exceed the per-requirement sample size");
    }
    const std::size_t negatives = per_requirement - positives;

    std::map<std::string, std::pair<std::vector<core::VerdictKey>,
                                    std::vector<core::VerdictKey>>>
        by_requirement;  // requirement id -> (positive keys, negative keys)
    for (const auto& v : verdicts) {
        auto& bucket = by_requirement[v.requirement_id];
        (v.satisfied ? bucket.first : bucket.second).push_back(core::key_of(v));
    }

    std::vector<core::VerdictKey> sample;
    for (const auto& [req_id, bucket] : by_requirement) {
        const std::uint64_t req_seed =
            util::fnv1a64_chain(util::fnv1a64(req_id), std::to_string(seed));
        auto pos = sample_k(bucket.first, positives, req_seed);
        auto neg = sample_k(bucket.second, negatives, req_seed ^ 0x5851f42d4c957f2dULL);
        sample.insert(sample.end(), pos.begin(), pos.end());
        sample.insert(sample.end(), neg.begin(), neg.end());
    }
    return sample;
}

AgreementReport agreement(const std::map<core::VerdictKey, bool>& predicted,
                          const std::map<core::VerdictKey, bool>& reference) {
    if (predicted.size() != reference.size()) {
        throw IntegrityError("agreement: predicted and reference key sets differ");
    }

    AgreementReport report;
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_req;  // matches, total
    std::size_t matches = 0;
    for (const auto& [key, label] : predicted) {
        auto it = reference.find(key);
        if (it == reference.end()) {
            throw IntegrityError("agreement: no reference label for a predicted key");
        }
        auto& [req_matches, req_total] = per_req[key.requirement_id];
        ++req_total;
        if (label == it->second) {
            ++matches;
            ++req_matches;
        }
    }

    report.overall = predicted.empty()
                         ? 0.0
                         : static_cast<double>(matches) / static_cast<double>(predicted.size());

    double sum = 0.0;
    for (const auto& [req_id, counts] : per_req) {
        const double frac =
            static_cast<double>(counts.first) / static_cast<double>(counts.second);
        report.per_requirement[req_id] = frac;
        sum += frac;
    }
    const std::size_t n = report.per_requirement.size();
    if (n > 0) {
        report.mean = sum / static_cast<double>(n);
        if (n > 1) {
            double ss = 0.0;
            for (const auto& [_, frac] : report.per_requirement) {
                ss += (frac - report.mean) * (frac - report.mean);
            }
            report.sd = std::sqrt(ss / static_cast<double>(n - 1));
        }
    }
    return report;
}

std::map<core::VerdictKey, bool> predicted_labels(
    const std::vector<core::VerdictRecord>& verdicts) {
    std::map<core::VerdictKey, bool> labels;
    for (const auto& v : verdicts) labels[core::key_of(v)] = v.satisfied;
    return labels;
}

}  // namespace reqlab::validators
