#include "reqlab/harness/objective.hpp"

#include "reqlab/composer/composer.hpp"
#include "reqlab/util/rng.hpp"

namespace reqlab::harness {

namespace {

JudgeContext judge_context_for(const PipelineObjective& ctx) {
    JudgeContext judge = ctx.judge;
    if (judge.task.description.empty()) judge.task = ctx.registry->task;
    if (judge.example_inputs.empty()) {
        for (const auto& example : ctx.examples) {
            judge.example_inputs[example.id] = example.input;
        }
    }
    return judge;
}

double evaluate_prompt(const PipelineObjective& ctx, const core::PromptSpec& prompt,
                       std::map<std::string, double>* per_requirement) {
    RunStore runs;
    ExecutionSummary ran = run_matrix(runs, {ctx.model_id}, {prompt}, ctx.examples,
                                      *ctx.provider, ctx.parallelism);
    if (!ran.clean()) {
        throw Error("objective evaluation failed: " + ran.failures.front().error);
    }
    VerdictStore verdicts;
    const JudgeContext judge = judge_context_for(ctx);
    ExecutionSummary judged =
        judge_all(verdicts, runs, *ctx.registry, judge, ctx.parallelism);
    if (!judged.clean()) {
        throw Error("objective judging failed: " + judged.failures.front().error);
    }
    const core::SatisfactionMatrix matrix = aggregate(verdicts.records(), {prompt});
    if (per_requirement) {
        for (const auto& id : ctx.registry->canonical_order) {
            const core::Cell* cell = matrix.find({ctx.model_id, prompt.id, id});
            (*per_requirement)[id] = cell ? cell->accuracy() : 0.0;
        }
    }
    return objective_accuracy(matrix, ctx.model_id, prompt.id,
                              ctx.registry->canonical_order, ctx.micro);
}

}  // namespace

opt::Objective subset_objective(const PipelineObjective& ctx) {
    opt::Objective objective;
    objective.score = [&ctx](const opt::BitVector& bits) {
        const core::PromptSpec prompt =
            composer::subset_prompt(ctx.registry->task, *ctx.registry, bits);
        return evaluate_prompt(ctx, prompt, nullptr);
    };
    objective.tokens = [&ctx](const opt::BitVector& bits) {
        const core::PromptSpec prompt =
            composer::subset_prompt(ctx.registry->task, *ctx.registry, bits);
        return composer::count_tokens(prompt.rendered);
    };
    return objective;
}

std::vector<std::string> infer_specified_ids(const std::string& prompt_text,
                                             const core::Registry& registry) {
    std::vector<std::string> ids;
    for (const auto& id : registry.canonical_order) {
        if (prompt_text.find(registry.get(id).text) != std::string::npos) {
            ids.push_back(id);
        }
    }
    return ids;
}

opt::PromptEvaluation score_prompt_text(const PipelineObjective& ctx,
                                        const std::string& prompt_text) {
    core::PromptSpec prompt;
    prompt.id = "text-" + util::to_hex(util::fnv1a64(prompt_text));
    prompt.task_id = ctx.registry->task.id;
    prompt.requirement_ids = infer_specified_ids(prompt_text, *ctx.registry);
    prompt.rendered = prompt_text;

    opt::PromptEvaluation eval;
    eval.objective = evaluate_prompt(ctx, prompt, &eval.per_requirement);
    return eval;
}

}  // namespace reqlab::harness
