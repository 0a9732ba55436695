#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "reqlab/core/types.hpp"

namespace reqlab::validators {

/// Stratified sample of verdicts for human review: per requirement, up to
/// `positives` satisfied and up to `per_requirement - positives`
/// unsatisfied verdicts, drawn uniformly; when fewer exist, the maximum
/// available are taken. Deterministic given the seed.
std::vector<core::VerdictKey> stratified_audit_sample(
    const std::vector<core::VerdictRecord>& verdicts,
    std::size_t per_requirement = 20,
    std::size_t positives = 10,
    std::uint64_t seed = 0);

struct AgreementReport {
    double overall = 0.0;                         // matches / total
    std::map<std::string, double> per_requirement;  // requirement id -> fraction
    double mean = 0.0;  // mean of per-requirement fractions
    double sd = 0.0;    // n-1 SD across requirements (0 when < 2)
};

/// Fraction of keys on which predicted satisfied labels match the
/// reference labels. The two key sets must be identical; otherwise
/// IntegrityError.
AgreementReport agreement(const std::map<core::VerdictKey, bool>& predicted,
                          const std::map<core::VerdictKey, bool>& reference);

/// Convenience: satisfied labels of a verdict list, keyed for agreement().
std::map<core::VerdictKey, bool> predicted_labels(
    const std::vector<core::VerdictRecord>& verdicts);

}  // namespace reqlab::validators
