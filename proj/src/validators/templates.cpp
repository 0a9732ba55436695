#include "reqlab/validators/templates.hpp"

#include <filesystem>

#include "reqlab/util/fs.hpp"

namespace reqlab::validators {

namespace {

const char* kPlanningSystem =
    R"(You are a reviewer who is evaluating whether a model output satisfies the given requirement. Given a task description, examples, and requirement, draft a step-by-step evaluation plan for the requirement.

Follow the guideline below:
- The evaluation plan should be a step-by-step process to evaluate if the requirement is met.
- The evaluation plan should be concise and clear, and lead to a final judgment on whether the model output meets the requirement.
- When requirements are conditional (e.g., indicated by "if applicable"), the evaluation plan should include a first step to check if the requirement is applicable to an example input.
- The evaluation plan should only include the steps to evaluate the requirement, and not include any additional feedback or suggestions, or steps to evaluate other related requirements.
- Write the plan as a numbered list, one step per line, starting with "1.", "2.", and so on.)";

const char* kPlanningUser =
    R"(Task description: {task_description}

Examples:
{examples}

Requirement: {requirement}

Evaluation Plan:)";

const char* kExecutionSystem =
    R"(You are a reviewer who is evaluating whether a model output satisfies the given requirement.

Given a task description, model input, model output, a requirement and its step-by-step evaluation plan, execute the evaluation plan to evaluate if the model output meets the requirement. If the requirement is not applicable, return True for meets_requirement.

After working through the plan, answer with a final line in exactly this form:
MEETS_REQUIREMENT: true|false|not_applicable)";

const char* kExecutionUser =
    R"(Task description: {task_description}

Model input:
{model_input}

Model output:
{model_output}

Requirement: {requirement}

Evaluation plan:
{plan})";

const char* kBrainstormSystem =
    R"(You are an experienced requirements engineer. Your goal is to brainstorm a list of requirements that specify desired LLM behaviors for the given task.
These requirements should identify behaviors that, if omitted, would likely frustrate or annoy users -- such as forgetting to surface important reminders, warnings, or common-sense.

These requirements should be consistent with each other without contradictions and complementary to existing requirements.

Guidelines:
- Each requirement should test exactly ONE requirement
- Requirements should be easily verifiable, almost as if writing a Boolean condition in Python. They should be testable with Python code or an LLM itself (no human judgment or external sources needed).
- Requirements should not be overly general (i.e. they should not be universal requirements that might apply to any reasonable reasponse)
- Requirements should be generally applicable for responses to that task, not referring to any specific response
- Avoid unrealistic edge cases - focus on plausible failures that could occur even in aligned or well-trained LLMs.
- Focus only on objective, measurable requirements
- Use concise and unambiguous language
- Never generate similar requirements to the existing requirements

Return the requirements as a list, one per line, each starting with "- ".)";

const char* kBrainstormUser =
    R"(Task description: {task_description}

Existing requirements:
{existing})";

const char* kErrorAnalysisSystem =
    R"(You are an experienced requirements engineer. Your goal is to extract a list of atomic requirements that specify desired LLM behaviors for the given task.

You will be presented with a model input and several model outputs from different models. First, provide a detailed analysis critiquing the model outputs.
Then, based on the analysis, suggest a list of atomic requirements that specify desired LLM behaviors for the given task.
These requirements should be consistent with each other without contradictions and complementary to existing requirements.

Guidelines:
- Each requirement should test exactly ONE requirement
- Requirements should be easily verifiable, almost as if writing a Boolean condition in Python
- Requirements should not be overly general (i.e. they should not be universal requirements that might apply to any tasks)
- Requirements should be generally applicable for responses to that task, not referring to any specific input examples
- Focus only on objective, measurable requirements
- Use concise and unambiguous language
- The requirements should be consistent with each other without contradictions
- The requirements should not overlap with existing requirements

Here are some bad requirements:
- The output should be interesting. - This is subjective
- The output should provide examples in fewer than 280 characters. - This overloads multiple aspects
- The output should be helpful and harmless. - This is overly general

Here are some good atomic requirements:
- The output should provide examples.
- The output should be fewer than 280 characters.
- The output should contain at least 3 references.

List the suggested requirements at the end, one per line, each starting with "- ".)";

const char* kErrorAnalysisUser =
    R"(Task description: {task_description}

Existing requirements:
{existing}

Model outputs:
{outputs})";

const char* kExtractSystem =
    R"(You are an experienced requirements engineer. Your goal is to extract the list of requirements that are explicitly specified in the given prompt.

Guidelines:
- Each requirement should test exactly ONE requirement
- Keep the phrasing faithful to the original prompt
- Do not invent requirements that the prompt does not state

Return one requirement per line, each starting with "- ".)";

const char* kExtractUser =
    R"(Prompt:
{prompt_text})";

const char* kProposeSystem =
    R"(You are an expert prompt engineer. Improve the instruction prompt below so the model satisfies more of the tracked requirements. You may reorder, merge, reword, or drop guideline items.

Propose {breadth} alternative instruction prompts. Before each candidate, output a line containing exactly "CANDIDATE:"; everything until the next marker (or the end of your answer) is that candidate's full text.)";

const char* kProposeUser =
    R"(Current prompt:
{current_prompt}

Per-requirement accuracy of the current prompt:
{feedback})";

const char* kGenericJudgeSystem =
    R"(You are grading a model output for how well it adheres to the given instruction prompt. Score it from 1 (poor) to 10 (excellent).

Respond with a final line in exactly this form:
SCORE: <integer between 1 and 10>)";

const char* kGenericJudgeUser =
    R"(Instruction prompt:
{prompt}

Model output:
{output})";

void maybe_load(std::string& slot, const std::string& dir, const char* file) {
    const std::filesystem::path path = std::filesystem::path(dir) / file;
    if (std::filesystem::exists(path)) {
        slot = util::read_file(path.string());
    }
}

}  // namespace

Templates default_templates() {
    Templates t;
    t.planning_system = kPlanningSystem;
    t.planning_user = kPlanningUser;
    t.execution_system = kExecutionSystem;
    t.execution_user = kExecutionUser;
    t.brainstorm_system = kBrainstormSystem;
    t.brainstorm_user = kBrainstormUser;
    t.error_analysis_system = kErrorAnalysisSystem;
    t.error_analysis_user = kErrorAnalysisUser;
    t.extract_system = kExtractSystem;
    t.extract_user = kExtractUser;
    t.propose_system = kProposeSystem;
    t.propose_user = kProposeUser;
    t.generic_judge_system = kGenericJudgeSystem;
    t.generic_judge_user = kGenericJudgeUser;
    return t;
}

Templates load_templates(const std::string& dir) {
    Templates t = default_templates();
    maybe_load(t.planning_system, dir, "planning_system.txt");
    maybe_load(t.planning_user, dir, "planning_user.txt");
    maybe_load(t.execution_system, dir, "execution_system.txt");
    maybe_load(t.execution_user, dir, "execution_user.txt");
    maybe_load(t.brainstorm_system, dir, "brainstorm_system.txt");
    maybe_load(t.brainstorm_user, dir, "brainstorm_user.txt");
    maybe_load(t.error_analysis_system, dir, "error_analysis_system.txt");
    maybe_load(t.error_analysis_user, dir, "error_analysis_user.txt");
    maybe_load(t.extract_system, dir, "extract_system.txt");
    maybe_load(t.extract_user, dir, "extract_user.txt");
    maybe_load(t.propose_system, dir, "propose_system.txt");
    maybe_load(t.propose_user, dir, "propose_user.txt");
    maybe_load(t.generic_judge_system, dir, "generic_judge_system.txt");
    maybe_load(t.generic_judge_user, dir, "generic_judge_user.txt");
    return t;
}

std::string render_template(const std::string& text,
                            const std::map<std::string, std::string>& values) {
    std::string out = text;
    for (const auto& [name, value] : values) {
        const std::string placeholder = "{" + name + "}";
        std::size_t pos = 0;
        while ((pos = out.find(placeholder, pos)) != std::string::npos) {
            out.replace(pos, placeholder.size(), value);
            pos += value.size();
        }
    }
    return out;
}

}  // namespace reqlab::validators
