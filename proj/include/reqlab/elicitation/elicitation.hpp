#pragma once

#include <string>
#include <vector>

#include "reqlab/core/types.hpp"
#include "reqlab/providers/embedding.hpp"
#include "reqlab/providers/provider.hpp"
#include "reqlab/validators/templates.hpp"

namespace reqlab::elicit {

struct CandidateRequirement {
    std::string text;
    core::Source source = core::Source::brainstorm;
    std::string origin_ref;  // which prompt / output batch produced it

    bool operator==(const CandidateRequirement&) const = default;
};

/// Parses "- ..." bullet lines out of a provider response. Exposed for
/// tests.
std::vector<std::string> parse_bullets(const std::string& response);

/// Extracts the requirements explicitly specified in an existing prompt;
/// candidates are tagged existing-prompt. Empty prompt text short-circuits
/// to an empty list without calling the provider.
std::vector<CandidateRequirement> extract_from_prompt(
    const std::string& prompt_text,
    providers::Provider& provider,
    const std::string& model_id,
    const validators::Templates& templates = validators::default_templates());

/// Anticipates failure modes and proposes new requirements; tagged
/// brainstorm. A response with no bullets yields an empty list (callers
/// may warn).
std::vector<CandidateRequirement> brainstorm(
    const core::TaskSpec& task,
    const std::vector<std::string>& existing_requirements,
    providers::Provider& provider,
    const std::string& model_id,
    const validators::Templates& templates = validators::default_templates());

/// Critiques real model outputs and suggests missing requirements; tagged
/// error-analysis. Requires at least one output.
std::vector<CandidateRequirement> error_analysis(
    const core::TaskSpec& task,
    const std::vector<std::string>& existing_requirements,
    const std::vector<std::string>& model_outputs,
    providers::Provider& provider,
    const std::string& model_id,
    const validators::Templates& templates = validators::default_templates());

/// Semantic dedup: candidates are taken in pinned order (existing-prompt,
/// then brainstorm, then error-analysis; input order within a source) and
/// a candidate is dropped iff its cosine similarity to any already-kept
/// candidate is strictly greater than the threshold. Existing-prompt
/// candidates are never dropped. Kept order is preserved; the pass is
/// idempotent.
std::vector<CandidateRequirement> dedup(const std::vector<CandidateRequirement>& candidates,
                                        providers::Embedder& embedder,
                                        double threshold = 0.9);

}  // namespace reqlab::elicit
