#pragma once

#include <map>
#include <string>
#include <vector>

#include "reqlab/core/types.hpp"
#include "reqlab/providers/provider.hpp"
#include "reqlab/validators/templates.hpp"
#include "reqlab/validators/verdict.hpp"

namespace reqlab::validators {

/// A frozen, numbered step list an executor model follows to judge one
/// requirement. Plans are generated once and persisted beside the
/// registry; revising one is an explicit re-run of plan_validator.
struct EvaluationPlan {
    std::string requirement_id;
    std::vector<std::string> steps;
    std::string created_by;  // planner model id

    bool operator==(const EvaluationPlan&) const = default;
};

/// Checks plan invariants: at least one step, and for conditional-scope
/// requirements the first step must be an applicability check (structural
/// proxy: it mentions applicability). Throws IntegrityError.
void validate_plan(const EvaluationPlan& plan, const core::Requirement& requirement);

/// Asks the planner for a numbered evaluation plan. Throws ParseError when
/// the response contains no numbered lines; provider errors pass through.
EvaluationPlan plan_validator(const core::Requirement& requirement,
                              const core::TaskSpec& task,
                              const std::vector<core::Example>& sample_examples,
                              providers::Provider& planner,
                              const std::string& planner_model_id,
                              const Templates& templates = default_templates());

/// Executes the plan on one (input, output) pair. The executor must end
/// with "MEETS_REQUIREMENT: true|false|not_applicable"; anything else
/// raises ParseError so a misparse can never be counted as a verdict.
/// not_applicable maps to (applicable=false, satisfied=true).
Verdict execute_judge(const EvaluationPlan& plan,
                      const core::Requirement& requirement,
                      const core::TaskSpec& task,
                      const std::string& input,
                      const std::string& output,
                      providers::Provider& executor,
                      const std::string& executor_model_id,
                      const Templates& templates = default_templates());

using PlanBook = std::map<std::string, EvaluationPlan>;  // requirement id -> plan

void save_plans(const PlanBook& plans, const std::string& path);
PlanBook load_plans(const std::string& path);

}  // namespace reqlab::validators
