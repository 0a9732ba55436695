#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reqlab/core/registry.hpp"
#include "reqlab/core/types.hpp"
#include "reqlab/harness/run_store.hpp"
#include "reqlab/providers/provider.hpp"
#include "reqlab/validators/judge.hpp"
#include "reqlab/validators/templates.hpp"

namespace reqlab::harness {

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

struct CellFailure {
    std::string model_id;
    std::string prompt_id;
    std::string example_id;
    std::string requirement_id;  // empty for run failures
    std::string error;
};

struct ExecutionSummary {
    std::size_t executed = 0;
    std::size_t skipped = 0;  // already present (resume)
    std::vector<CellFailure> failures;

    bool clean() const { return failures.empty(); }
};

/// Executes one RunRecord per (model, prompt, example) with a bounded
/// worker pool. Existing records are skipped so the call is resumable.
/// A failed cell leaves no partial record; its error is returned in the
/// summary. Results are identical regardless of completion order.
ExecutionSummary run_matrix(RunStore& store,
                            const std::vector<std::string>& models,
                            const std::vector<core::PromptSpec>& prompts,
                            const std::vector<core::Example>& examples,
                            providers::Provider& provider,
                            std::size_t parallelism = 1,
                            std::int64_t created_at_unix = 0);

/// How judge-bound requirements are executed. Manifest and programmatic
/// validators need none of this.
struct JudgeContext {
    core::TaskSpec task;
    const validators::PlanBook* plans = nullptr;
    providers::Provider* executor = nullptr;
    std::string executor_model_id;
    validators::Templates templates = validators::default_templates();
    std::map<std::string, std::string> example_inputs;  // example id -> input
};

/// Judges every requirement on every run -- specified or not -- producing
/// |runs| x |requirements| verdicts on success. Existing verdicts are
/// skipped (resume). Validator errors never default to a verdict; they are
/// recorded per cell and the cell is left empty.
ExecutionSummary judge_all(VerdictStore& verdicts,
                           const RunStore& runs,
                           const core::Registry& registry,
                           const JudgeContext& context,
                           std::size_t parallelism = 1);

// ---------------------------------------------------------------------------
// Aggregation and statistics
// ---------------------------------------------------------------------------

/// Exact recount of verdicts into the satisfaction matrix. The specified
/// flag of each cell is defined by prompt membership: requirement id in
/// that prompt's requirement_ids. Unknown prompt ids are an error.
core::SatisfactionMatrix aggregate(const std::vector<core::VerdictRecord>& verdicts,
                                   const std::vector<core::PromptSpec>& prompts);

/// Mean/SD of per-prompt accuracy for one (requirement, model), split by
/// condition. SD uses the n-1 denominator and is absent with fewer than
/// two prompts; a condition with no prompts at all has both fields absent.
struct RequirementStats {
    std::string requirement_id;
    std::string model_id;
    std::optional<double> acc_specified;
    std::optional<double> sd_specified;
    std::optional<double> acc_unspecified;
    std::optional<double> sd_unspecified;
    std::size_t n_prompts_specified = 0;
    std::size_t n_prompts_unspecified = 0;
};

RequirementStats requirement_stats(const core::SatisfactionMatrix& matrix,
                                   const std::string& requirement_id,
                                   const std::string& model_id);

std::vector<RequirementStats> all_requirement_stats(const core::SatisfactionMatrix& matrix);

/// Requirements whose mean unspecified accuracy is >= threshold for the
/// model (the model can guess them without specification).
std::vector<std::string> guessable(const core::SatisfactionMatrix& matrix,
                                   const std::string& model_id,
                                   double threshold = 0.98);

/// Per-requirement count of prompts in which it is specified; used to
/// re-assert the cyclic-design balance on ingested data.
std::map<std::string, std::size_t> specified_prompt_counts(
    const core::SatisfactionMatrix& matrix, const std::string& model_id);

// ---------------------------------------------------------------------------
// Regression across model versions
// ---------------------------------------------------------------------------

struct RegressionEntry {
    std::string prompt_id;
    std::string requirement_id;
    bool specified = false;
    double drop = 0.0;  // accuracy_old - accuracy_new
};

struct RegressionReport {
    std::pair<std::string, std::string> model_pair;
    double threshold = 0.20;
    std::vector<RegressionEntry> entries;  // sorted by (prompt, requirement)
    std::vector<std::pair<double, double>> cdf_specified;    // (drop, frac <= drop)
    std::vector<std::pair<double, double>> cdf_unspecified;
    double frac_over_specified = 0.0;    // fraction of entries with drop > threshold
    double frac_over_unspecified = 0.0;
    /// Requirements whose mean unspecified accuracy dropped > threshold.
    std::vector<std::pair<std::string, double>> flagged_unspecified;
};

/// Per-(prompt, requirement) accuracy drops between two model versions.
/// Each matrix must hold exactly one model; the two must share identical
/// (prompt, requirement) key sets and specified flags.
RegressionReport regression_report(const core::SatisfactionMatrix& matrix_old,
                                   const core::SatisfactionMatrix& matrix_new,
                                   double threshold = 0.20);

// ---------------------------------------------------------------------------
// Optimization objective
// ---------------------------------------------------------------------------

/// Average requirement accuracy for one (model, prompt): the macro mean
/// over required_ids of per-requirement accuracy, specified and
/// unspecified alike. micro=true pools verdict counts instead. Missing
/// coverage of any required id is an error.
double objective_accuracy(const core::SatisfactionMatrix& matrix,
                          const std::string& model_id,
                          const std::string& prompt_id,
                          const std::vector<std::string>& required_ids,
                          bool micro = false);

}  // namespace reqlab::harness
