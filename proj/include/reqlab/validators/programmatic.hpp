#pragma once

#include <string>

#include "reqlab/core/types.hpp"
#include "reqlab/validators/verdict.hpp"

namespace reqlab::validators {

/// Validator binding grammar for Requirement::validator_ref:
///   "manifest"                    -- read the simulated-output manifest
///   "judge"                       -- two-step plan/execute LLM judge
///   "length-at-least(N)"          -- output at least N characters
///   "word-count-at-most(N)"       -- at most N whitespace-delimited words
///   "forbidden-substring(S)"      -- S must not occur in the output
///   "required-substring(S)"       -- S must occur in the output
enum class ValidatorKind {
    manifest,
    judge,
    length_at_least,
    word_count_at_most,
    forbidden_substring,
    required_substring,
};

struct ValidatorRef {
    ValidatorKind kind;
    std::string arg;  // raw argument text; numeric for the count validators
};

/// Parses a validator_ref string; throws ConfigError on unknown names or
/// malformed arguments. `is_known_validator` is the non-throwing probe
/// used at registry-validation time.
ValidatorRef parse_validator_ref(const std::string& ref);
bool is_known_validator(const std::string& ref);

/// Runs one of the deterministic built-in predicates. `validator_name` is
/// the full ref string, e.g. "length-at-least(500)". Pure: same inputs,
/// same verdict. Throws ConfigError for unknown names and for refs that
/// are not programmatic (manifest/judge).
Verdict programmatic_validate(const std::string& validator_name,
                              const core::TaskSpec& task,
                              const std::string& input,
                              const std::string& output);

/// Reads the trailing "SATISFIED: id1,id2,..." manifest line of a
/// simulated output; satisfied iff requirement_id is listed. Throws
/// ParseError when the manifest line is missing.
Verdict manifest_validate(const std::string& requirement_id,
                          const std::string& output_with_manifest);

}  // namespace reqlab::validators
