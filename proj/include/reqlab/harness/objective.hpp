#pragma once

#include <string>
#include <vector>

#include "reqlab/core/registry.hpp"
#include "reqlab/harness/harness.hpp"
#include "reqlab/optimizers/copro.hpp"
#include "reqlab/optimizers/search.hpp"

namespace reqlab::harness {

/// The run -> judge -> aggregate pipeline packaged as an optimizer
/// objective: score(bits) renders the subset prompt, executes it over the
/// evaluation examples, judges every registry requirement, and returns the
/// macro average requirement accuracy. tokens(bits) is the rendered
/// prompt's token count.
struct PipelineObjective {
    const core::Registry* registry = nullptr;
    std::vector<core::Example> examples;  // evaluation split
    providers::Provider* provider = nullptr;
    std::string model_id;
    std::size_t parallelism = 1;
    bool micro = false;
    JudgeContext judge;  // task is filled from the registry when empty
};

opt::Objective subset_objective(const PipelineObjective& ctx);

/// Scores an arbitrary prompt text on all registry requirements (the
/// rewrite optimizer's scorer). The prompt's specified set is inferred as
/// the requirements whose exact text occurs in the prompt, which is what
/// deterministic providers key their draws on.
opt::PromptEvaluation score_prompt_text(const PipelineObjective& ctx,
                                        const std::string& prompt_text);

std::vector<std::string> infer_specified_ids(const std::string& prompt_text,
                                             const core::Registry& registry);

}  // namespace reqlab::harness
