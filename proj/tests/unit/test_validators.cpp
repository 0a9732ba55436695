#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "reqlab/providers/scripted.hpp"
#include "reqlab/util/fs.hpp"
#include "reqlab/validators/audit.hpp"
#include "reqlab/validators/judge.hpp"
#include "reqlab/validators/programmatic.hpp"
#include "reqlab/validators/templates.hpp"

using namespace reqlab;
using namespace reqlab::validators;

namespace {

core::Requirement conditional_requirement() {
    core::Requirement r;
    r.id = "r-cond";
    r.text = "The output should describe error handling, if applicable.";
    r.scope = core::Scope::conditional;
    r.validator_ref = "judge";
    return r;
}

core::VerdictRecord verdict(const std::string& example_id, const std::string& req_id,
                            bool satisfied) {
    core::VerdictRecord v;
    v.model_id = "m";
    v.prompt_id = "p";
    v.example_id = example_id;
    v.requirement_id = req_id;
    v.applicable = true;
    v.satisfied = satisfied;
    return v;
}

}  // namespace

// --- programmatic validators ------------------------------------------------

TEST_CASE("length-at-least: 499 characters fail a 500-char floor") {
    const core::TaskSpec task{"t", "d", ""};
    const std::string output(499, 'x');
    CHECK_FALSE(programmatic_validate("length-at-least(500)", task, "", output).satisfied);
    CHECK(programmatic_validate("length-at-least(500)", task, "", output + "x").satisfied);
}

TEST_CASE("word-count-at-most: empty output satisfies any cap") {
    const core::TaskSpec task{"t", "d", ""};
    CHECK(programmatic_validate("word-count-at-most(500)", task, "", "").satisfied);
    CHECK_FALSE(
        programmatic_validate("word-count-at-most(2)", task, "", "one two three").satisfied);
}

TEST_CASE("forbidden-substring catches Markdown markers") {
    const core::TaskSpec task{"t", "d", ""};
    CHECK_FALSE(programmatic_validate("forbidden-substring(**)", task, "",
                                      "this has **bold** text")
                    .satisfied);
    CHECK(programmatic_validate("forbidden-substring(**)", task, "", "plain text").satisfied);
}

TEST_CASE("required-substring") {
    const core::TaskSpec task{"t", "d", ""};
    CHECK(programmatic_validate("required-substring(summary)", task, "",
                                "a summary first")
              .satisfied);
    CHECK_FALSE(
        programmatic_validate("required-substring(summary)", task, "", "none here").satisfied);
}

TEST_CASE("programmatic validators are pure") {
    const core::TaskSpec task{"t", "d", ""};
    for (int i = 0; i < 3; ++i) {
        const auto v = programmatic_validate("length-at-least(3)", task, "", "abcd");
        CHECK(v.applicable);
        CHECK(v.satisfied);
    }
}

TEST_CASE("unknown validator names are rejected") {
    const core::TaskSpec task{"t", "d", ""};
    CHECK_THROWS_AS(programmatic_validate("no-such(1)", task, "", ""), ConfigError);
    CHECK_FALSE(is_known_validator("no-such(1)"));
    CHECK_FALSE(is_known_validator("length-at-least(abc)"));
    CHECK(is_known_validator("manifest"));
    CHECK(is_known_validator("judge"));
    CHECK(is_known_validator("length-at-least(500)"));
}

// --- manifest validator -----------------------------------------------------

TEST_CASE("manifest_validate reads the SATISFIED line") {
    const std::string output = "some text\nSATISFIED: r1,r3";
    CHECK(manifest_validate("r3", output).satisfied);
    CHECK_FALSE(manifest_validate("r2", output).satisfied);
    CHECK_THROWS_AS(manifest_validate("r1", "no manifest here"), ParseError);
}

TEST_CASE("manifest_validate handles an empty manifest and is pure") {
    const std::string output = "body\nSATISFIED: ";
    CHECK_FALSE(manifest_validate("r1", output).satisfied);
    CHECK(manifest_validate("r1", output).applicable);
}

// --- verdict convention -----------------------------------------------------

TEST_CASE("applicable=false forces satisfied=true") {
    CHECK_THROWS_AS(make_verdict(false, false), IntegrityError);
    const Verdict v = not_applicable_verdict("skipped");
    CHECK_FALSE(v.applicable);
    CHECK(v.satisfied);
}

// --- plan/execute judge -----------------------------------------------------

TEST_CASE("plan_validator parses numbered steps from the planner") {
    providers::ScriptedProvider planner(
        {"1. Check if the requirement is applicable to the input.\n"
         "2. Scan the output for error handling coverage.\n"
         "3. Judge whether the coverage is accurate."});
    const auto requirement = conditional_requirement();
    const core::TaskSpec task{"t", "Explain the code snippet.", ""};

    const auto plan = plan_validator(requirement, task, {}, planner, "planner-model");
    CHECK(plan.requirement_id == "r-cond");
    CHECK(plan.created_by == "planner-model");
    REQUIRE(plan.steps.size() == 3);
    CHECK(plan.steps[0] == "Check if the requirement is applicable to the input.");

    // The planner request embeds the task and requirement texts.
    const auto sent = planner.requests().front();
    CHECK(sent.user_input.find(task.description) != std::string::npos);
    CHECK(sent.user_input.find(requirement.text) != std::string::npos);
}

TEST_CASE("plan with no numbered lines is a parse error") {
    providers::ScriptedProvider planner({"I would just look at the output carefully."});
    const auto requirement = conditional_requirement();
    const core::TaskSpec task{"t", "d", ""};
    CHECK_THROWS_AS(plan_validator(requirement, task, {}, planner, "m"), ParseError);
}

TEST_CASE("conditional requirements need an applicability first step") {
    EvaluationPlan plan;
    plan.requirement_id = "r-cond";
    plan.steps = {"Scan the output for error handling."};
    CHECK_THROWS_AS(validate_plan(plan, conditional_requirement()), IntegrityError);

    plan.steps = {"Check if the requirement is applicable.", "Scan the output."};
    CHECK_NOTHROW(validate_plan(plan, conditional_requirement()));
}

TEST_CASE("plans round-trip through save/load") {
    const auto dir = test_helpers::scratch_dir("plans");
    PlanBook plans;
    plans["r1"] = {"r1", {"step one", "step two"}, "planner"};
    plans["r2"] = {"r2", {"only step"}, "planner"};
    save_plans(plans, dir + "/plans.json");
    CHECK(load_plans(dir + "/plans.json") == plans);
}

TEST_CASE("execute_judge maps the response grammar to verdicts") {
    const auto requirement = conditional_requirement();
    const core::TaskSpec task{"t", "d", ""};
    EvaluationPlan plan{"r-cond", {"Check applicability.", "Check the output."}, "m"};

    providers::ScriptedProvider executor({
        "The input has no error paths.\nMEETS_REQUIREMENT: not_applicable",
        "Coverage is present and correct.\nMEETS_REQUIREMENT: true",
        "Coverage is missing.\nMEETS_REQUIREMENT: false",
        "I cannot decide.",
    });

    const Verdict na = execute_judge(plan, requirement, task, "in", "out", executor, "m");
    CHECK_FALSE(na.applicable);
    CHECK(na.satisfied);

    const Verdict yes = execute_judge(plan, requirement, task, "in", "out", executor, "m");
    CHECK(yes.applicable);
    CHECK(yes.satisfied);
    CHECK(yes.rationale == "Coverage is present and correct.");

    const Verdict no = execute_judge(plan, requirement, task, "in", "out", executor, "m");
    CHECK(no.applicable);
    CHECK_FALSE(no.satisfied);

    CHECK_THROWS_AS(execute_judge(plan, requirement, task, "in", "out", executor, "m"),
                    ParseError);
}

TEST_CASE("scripted executor fixture over 5 outputs reproduces fixture labels") {
    const auto requirement = conditional_requirement();
    const core::TaskSpec task{"t", "d", ""};
    EvaluationPlan plan{"r-cond", {"Check applicability.", "Judge."}, "m"};

    const std::vector<bool> fixture = {true, false, true, true, false};
    std::vector<std::string> responses;
    for (bool label : fixture) {
        responses.push_back(std::string("rationale\nMEETS_REQUIREMENT: ") +
                            (label ? "true" : "false"));
    }
    providers::ScriptedProvider executor(responses);
    for (bool label : fixture) {
        const Verdict v =
            execute_judge(plan, requirement, task, "in", "out", executor, "m");
        CHECK(v.satisfied == label);
    }
}

// --- templates ----------------------------------------------------------------

TEST_CASE("repo template files mirror the compiled-in defaults") {
    const Templates defaults = default_templates();
    const Templates loaded = load_templates(REQLAB_TEMPLATE_DIR);
    CHECK(loaded.planning_system == defaults.planning_system);
    CHECK(loaded.execution_system == defaults.execution_system);
    CHECK(loaded.brainstorm_system == defaults.brainstorm_system);
    CHECK(loaded.error_analysis_system == defaults.error_analysis_system);
    CHECK(loaded.extract_system == defaults.extract_system);
    CHECK(loaded.propose_system == defaults.propose_system);
    CHECK(loaded.generic_judge_system == defaults.generic_judge_system);
}

TEST_CASE("planning template asks for the applicability first step") {
    const Templates t = default_templates();
    CHECK(t.planning_system.find(
              "include a first step to check if the requirement is applicable") !=
          std::string::npos);
}

TEST_CASE("execution template pins the verdict grammar") {
    const Templates t = default_templates();
    CHECK(t.execution_system.find("If the requirement is not applicable, return True") !=
          std::string::npos);
    CHECK(t.execution_system.find("MEETS_REQUIREMENT: true|false|not_applicable") !=
          std::string::npos);
}

TEST_CASE("render_template substitutes every occurrence") {
    CHECK(render_template("{a} and {a} and {b}", {{"a", "x"}, {"b", "y"}}) ==
          "x and x and y");
    CHECK(render_template("{missing}", {}) == "{missing}");
}

// --- stratified audit sample -------------------------------------------------

TEST_CASE("audit sample takes 10 positive and 10 negative when plentiful") {
    std::vector<core::VerdictRecord> verdicts;
    for (int i = 0; i < 100; ++i) verdicts.push_back(verdict("e" + std::to_string(i), "r1", true));
    for (int i = 100; i < 200; ++i)
        verdicts.push_back(verdict("e" + std::to_string(i), "r1", false));

    const auto sample = stratified_audit_sample(verdicts, 20, 10, 7);
    CHECK(sample.size() == 20);

    std::size_t positives = 0;
    std::set<core::VerdictKey> unique(sample.begin(), sample.end());
    CHECK(unique.size() == 20);
    std::map<core::VerdictKey, bool> by_key;
    for (const auto& v : verdicts) by_key[core::key_of(v)] = v.satisfied;
    for (const auto& key : sample) {
        if (by_key.at(key)) ++positives;
    }
    CHECK(positives == 10);
}

TEST_CASE("audit sample takes the maximum available when scarce") {
    std::vector<core::VerdictRecord> verdicts;
    for (int i = 0; i < 30; ++i) verdicts.push_back(verdict("e" + std::to_string(i), "r1", true));
    // zero negatives for r1
    const auto sample = stratified_audit_sample(verdicts, 20, 10, 3);
    CHECK(sample.size() == 10);  // 10 positives + 0 negatives
}

TEST_CASE("audit sample of an empty store is empty, and it is deterministic") {
    CHECK(stratified_audit_sample({}, 20, 10, 1).empty());

    std::vector<core::VerdictRecord> verdicts;
    for (int i = 0; i < 50; ++i)
        verdicts.push_back(verdict("e" + std::to_string(i), "r1", i % 2 == 0));
    CHECK(stratified_audit_sample(verdicts, 20, 10, 5) ==
          stratified_audit_sample(verdicts, 20, 10, 5));
}

// --- agreement -----------------------------------------------------------------

TEST_CASE("agreement fractions on fixtures") {
    std::map<core::VerdictKey, bool> predicted, reference;
    const std::vector<bool> labels = {true, false, true, true};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        core::VerdictKey key{"m", "p", "e" + std::to_string(i), "r1"};
        predicted[key] = labels[i];
        reference[key] = labels[i];
    }
    CHECK(agreement(predicted, reference).overall == doctest::Approx(1.0));

    auto flipped = reference;
    for (auto& [key, value] : flipped) value = !value;
    CHECK(agreement(predicted, flipped).overall == doctest::Approx(0.0));

    auto three_of_four = reference;
    three_of_four.begin()->second = !three_of_four.begin()->second;
    CHECK(agreement(predicted, three_of_four).overall == doctest::Approx(0.75));
}

TEST_CASE("agreement reports per-requirement mean and SD") {
    std::map<core::VerdictKey, bool> predicted, reference;
    // r1: 2/2 agree; r2: 1/2 agree
    predicted[{"m", "p", "e1", "r1"}] = true;
    reference[{"m", "p", "e1", "r1"}] = true;
    predicted[{"m", "p", "e2", "r1"}] = false;
    reference[{"m", "p", "e2", "r1"}] = false;
    predicted[{"m", "p", "e1", "r2"}] = true;
    reference[{"m", "p", "e1", "r2"}] = true;
    predicted[{"m", "p", "e2", "r2"}] = true;
    reference[{"m", "p", "e2", "r2"}] = false;

    const auto report = agreement(predicted, reference);
    CHECK(report.per_requirement.at("r1") == doctest::Approx(1.0));
    CHECK(report.per_requirement.at("r2") == doctest::Approx(0.5));
    CHECK(report.mean == doctest::Approx(0.75));
    CHECK(report.sd == doctest::Approx(0.3535533905932738));
}

TEST_CASE("agreement rejects mismatched key sets") {
    std::map<core::VerdictKey, bool> predicted, reference;
    predicted[{"m", "p", "e1", "r1"}] = true;
    reference[{"m", "p", "e2", "r1"}] = true;
    CHECK_THROWS_AS(agreement(predicted, reference), IntegrityError);
}
