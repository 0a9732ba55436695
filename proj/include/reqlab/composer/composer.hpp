#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reqlab/core/registry.hpp"
#include "reqlab/core/types.hpp"

namespace reqlab::composer {

/// Renders the prompt for a task plus an ordered requirement subset:
///
///   <task description>
///   <blank line>
///   Follow the guideline below:
///   - <requirement text>
///   ...
///
/// With zero requirements, the output is the bare task description (no
/// dangling guideline header).
std::string render_prompt(const core::TaskSpec& task,
                          const std::vector<core::Requirement>& requirements);

/// Deterministic Fisher-Yates permutation of requirement ids (splitmix64,
/// see util/rng.hpp). Throws IntegrityError on duplicate ids.
std::vector<std::string> shuffle_order(const std::vector<std::string>& requirement_ids,
                                       std::uint64_t seed);

/// The balanced experimental design: prompt i specifies the k requirements
/// at positions i..i+k-1 (mod N) of requirement_order, so every
/// requirement is specified in exactly k prompts and unspecified in N-k.
struct CyclicDesign {
    std::vector<std::string> requirement_order;
    std::size_t window_k = 0;
    std::vector<core::PromptSpec> prompts;
};

/// Builds the N-prompt cyclic design over `order` with window k.
/// Requires 1 <= k <= N; throws ConfigError otherwise.
CyclicDesign cyclic_design(const core::TaskSpec& task,
                           const core::Registry& registry,
                           const std::vector<std::string>& order,
                           std::size_t k);

/// Prompt for one bitvector over the registry's canonical order: includes
/// exactly the requirements with bit=1, in canonical order. Throws
/// ConfigError when |bits| != registry size.
core::PromptSpec subset_prompt(const core::TaskSpec& task,
                               const core::Registry& registry,
                               const std::vector<std::uint8_t>& bits);

/// Token count under the default tokenizer: whitespace-delimited words.
/// Provider-specific tokenizers may be plugged in upstream; every token
/// comparison in this toolkit is internally consistent under this rule.
std::size_t count_tokens(const std::string& text);

}  // namespace reqlab::composer
