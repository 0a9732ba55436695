#include "reqlab/validators/judge.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reqlab/util/fs.hpp"

namespace reqlab::validators {

using nlohmann::json;

namespace {

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

/// "3. Check that ..." / "3) Check that ..." -> step text.
std::vector<std::string> parse_numbered_steps(const std::string& text) {
    std::vector<std::string> steps;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const std::string t = trim(line);
        std::size_t i = 0;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
        if (i == 0 || i >= t.size()) continue;
        if (t[i] != '.' && t[i] != ')') continue;
        steps.push_back(trim(t.substr(i + 1)));
    }
    return steps;
}

std::string render_examples(const std::vector<core::Example>& examples) {
    std::ostringstream out;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        if (i) out << "\n";
        out << "Example " << (i + 1) << ":\n" << examples[i].input << "\n";
    }
    return out.str();
}

}  // namespace

void validate_plan(const EvaluationPlan& plan, const core::Requirement& requirement) {
    if (plan.steps.empty()) {
        throw IntegrityError("evaluation plan for " + plan.requirement_id + " has no steps");
    }
    if (requirement.scope == core::Scope::conditional) {
        if (to_lower(plan.steps.front()).find("applicab") == std::string::npos) {
            throw IntegrityError("plan for conditional requirement " + plan.requirement_id +
                                 " must start with an applicability check");
        }
    }
}

EvaluationPlan plan_validator(const core::Requirement& requirement,
                              const core::TaskSpec& task,
                              const std::vector<core::Example>& sample_examples,
                              providers::Provider& planner,
                              const std::string& planner_model_id,
                              const Templates& templates) {
    providers::CompletionRequest request;
    request.model_id = planner_model_id;
    request.system_prompt = templates.planning_system;
    request.user_input = render_template(
        templates.planning_user,
        {{"task_description", task.description},
         {"examples", render_examples(sample_examples)},
         {"requirement", requirement.text}});

    const std::string response = planner.complete(request);

    EvaluationPlan plan;
    plan.requirement_id = requirement.id;
    plan.created_by = planner_model_id;
    plan.steps = parse_numbered_steps(response);
    if (plan.steps.empty()) {
        throw ParseError("planner response for " + requirement.id +
                         " contains no numbered steps");
    }
    validate_plan(plan, requirement);
    return plan;
}

Verdict execute_judge(const EvaluationPlan& plan,
                      const core::Requirement& requirement,
                      const core::TaskSpec& task,
                      const std::string& input,
                      const std::string& output,
                      providers::Provider& executor,
                      const std::string& executor_model_id,
                      const Templates& templates) {
    std::ostringstream plan_text;
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        if (i) plan_text << "\n";
        plan_text << (i + 1) << ". " << plan.steps[i];
    }

    providers::CompletionRequest request;
    request.model_id = executor_model_id;
    request.system_prompt = templates.execution_system;
    request.user_input = render_template(templates.execution_user,
                                         {{"task_description", task.description},
                                          {"model_input", input},
                                          {"model_output", output},
                                          {"requirement", requirement.text},
                                          {"plan", plan_text.str()}});

    const std::string response = executor.complete(request);

    static const std::string kPrefix = "MEETS_REQUIREMENT:";
    std::string verdict_line;
    std::string rationale;
    std::istringstream lines(response);
    std::string line;
    while (std::getline(lines, line)) {
        const std::string t = trim(line);
        if (t.rfind(kPrefix, 0) == 0) {
            verdict_line = t;
        } else if (verdict_line.empty() && !t.empty()) {
            if (!rationale.empty()) rationale += "\n";
            rationale += t;
        }
    }
    if (verdict_line.empty()) {
        throw ParseError("executor response for " + requirement.id +
                         " has no MEETS_REQUIREMENT line");
    }

    const std::string value = to_lower(trim(verdict_line.substr(kPrefix.size())));
    if (value == "true") return make_verdict(true, true, rationale);
    if (value == "false") return make_verdict(true, false, rationale);
    if (value == "not_applicable") return not_applicable_verdict(rationale);
    throw ParseError("executor verdict for " + requirement.id +
                     " is not true/false/not_applicable: " + value);
}

void save_plans(const PlanBook& plans, const std::string& path) {
    json j = json::object();
    for (const auto& [id, plan] : plans) {
        j[id] = json{{"requirement_id", plan.requirement_id},
                     {"steps", plan.steps},
                     {"created_by", plan.created_by}};
    }
    util::write_file(path, j.dump(2) + "\n");
}

PlanBook load_plans(const std::string& path) {
    json j;
    try {
        j = json::parse(util::read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed plan file: ") + e.what());
    }
    PlanBook plans;
    for (const auto& [id, pj] : j.items()) {
        EvaluationPlan plan;
        plan.requirement_id = pj.value("requirement_id", id);
        plan.steps = pj.at("steps").get<std::vector<std::string>>();
        plan.created_by = pj.value("created_by", "");
        plans[id] = std::move(plan);
    }
    return plans;
}

}  // namespace reqlab::validators
