#include "reqlab/harness/harness.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

#include "reqlab/validators/programmatic.hpp"
#include "reqlab/util/parallel.hpp"

namespace reqlab::harness {

ExecutionSummary run_matrix(RunStore& store,
                            const std::vector<std::string>& models,
                            const std::vector<core::PromptSpec>& prompts,
                            const std::vector<core::Example>& examples,
                            providers::Provider& provider,
                            std::size_t parallelism,
                            std::int64_t created_at_unix) {
    struct Task {
        const std::string* model;
        const core::PromptSpec* prompt;
        const core::Example* example;
    };
    ExecutionSummary summary;
    std::vector<Task> tasks;
    for (const auto& model : models) {
        for (const auto& prompt : prompts) {
            for (const auto& example : examples) {
                if (store.contains(model, prompt.id, example.id)) {
                    ++summary.skipped;
                    continue;
                }
                tasks.push_back({&model, &prompt, &example});
            }
        }
    }

    std::vector<std::optional<core::RunRecord>> results(tasks.size());
    std::vector<std::optional<CellFailure>> failures(tasks.size());

    util::parallel_for(tasks.size(), parallelism, [&](std::size_t i) {
        const Task& t = tasks[i];
        providers::CompletionRequest request;
        request.model_id = *t.model;
        request.system_prompt = t.prompt->rendered;
        request.user_input = t.example->input;
        request.prompt_id = t.prompt->id;
        request.example_id = t.example->id;
        request.specified_ids = t.prompt->requirement_ids;
        try {
            core::RunRecord record;
            record.model_id = *t.model;
            record.prompt_id = t.prompt->id;
            record.example_id = t.example->id;
            record.output = provider.complete(request);
            record.provider_fingerprint = provider.fingerprint(request);
            record.created_at_unix = created_at_unix;
            results[i] = std::move(record);
        } catch (const std::exception& e) {
            failures[i] = CellFailure{*t.model, t.prompt->id, t.example->id, "", e.what()};
        }
    });

    // Single-threaded reduction in task order keeps the store
    // scheduling-independent.
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (results[i]) {
            store.insert(std::move(*results[i]));
            ++summary.executed;
        } else if (failures[i]) {
            summary.failures.push_back(std::move(*failures[i]));
        }
    }
    return summary;
}

ExecutionSummary judge_all(VerdictStore& verdicts,
                           const RunStore& runs,
                           const core::Registry& registry,
                           const JudgeContext& context,
                           std::size_t parallelism) {
    struct Task {
        const core::RunRecord* run;
        const core::Requirement* requirement;
    };
    ExecutionSummary summary;
    std::vector<Task> tasks;
    for (const core::RunRecord* run : runs.records()) {
        for (const auto& requirement : registry.requirements) {
            core::VerdictKey key{run->model_id, run->prompt_id, run->example_id,
                                 requirement.id};
            if (verdicts.contains(key)) {
                ++summary.skipped;
                continue;
            }
            tasks.push_back({run, &requirement});
        }
    }

    std::vector<std::optional<core::VerdictRecord>> results(tasks.size());
    std::vector<std::optional<CellFailure>> failures(tasks.size());

    util::parallel_for(tasks.size(), parallelism, [&](std::size_t i) {
        const Task& t = tasks[i];
        try {
            const auto ref = validators::parse_validator_ref(t.requirement->validator_ref);
            validators::Verdict verdict;
            switch (ref.kind) {
                case validators::ValidatorKind::manifest:
                    verdict = validators::manifest_validate(t.requirement->id, t.run->output);
                    break;
                case validators::ValidatorKind::judge: {
                    if (!context.plans || !context.executor) {
                        throw ConfigError("judge validator needs plans and an executor");
                    }
                    auto plan_it = context.plans->find(t.requirement->id);
                    if (plan_it == context.plans->end()) {
                        throw ConfigError("no evaluation plan for " + t.requirement->id);
                    }
                    std::string input;
                    auto input_it = context.example_inputs.find(t.run->example_id);
                    if (input_it != context.example_inputs.end()) input = input_it->second;
                    verdict = validators::execute_judge(
                        plan_it->second, *t.requirement, context.task, input,
                        t.run->output, *context.executor, context.executor_model_id,
                        context.templates);
                    break;
                }
                default: {
                    std::string input;
                    auto input_it = context.example_inputs.find(t.run->example_id);
                    if (input_it != context.example_inputs.end()) input = input_it->second;
                    verdict = validators::programmatic_validate(
                        t.requirement->validator_ref, context.task, input, t.run->output);
                }
            }
            core::VerdictRecord record;
            record.model_id = t.run->model_id;
            record.prompt_id = t.run->prompt_id;
            record.example_id = t.run->example_id;
            record.requirement_id = t.requirement->id;
            record.applicable = verdict.applicable;
            record.satisfied = verdict.satisfied;
            record.rationale = verdict.rationale;
            results[i] = std::move(record);
        } catch (const std::exception& e) {
            failures[i] = CellFailure{t.run->model_id, t.run->prompt_id,
                                      t.run->example_id, t.requirement->id, e.what()};
        }
    });

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (results[i]) {
            verdicts.insert(std::move(*results[i]));
            ++summary.executed;
        } else if (failures[i]) {
            summary.failures.push_back(std::move(*failures[i]));
        }
    }
    return summary;
}

core::SatisfactionMatrix aggregate(const std::vector<core::VerdictRecord>& verdicts,
                                   const std::vector<core::PromptSpec>& prompts) {
    std::map<std::string, std::set<std::string>> specified_by_prompt;
    for (const auto& prompt : prompts) {
        specified_by_prompt[prompt.id] = {prompt.requirement_ids.begin(),
                                          prompt.requirement_ids.end()};
    }
    core::SatisfactionMatrix matrix;
    for (const auto& verdict : verdicts) {
        auto it = specified_by_prompt.find(verdict.prompt_id);
        if (it == specified_by_prompt.end()) {
            throw IntegrityError("verdict references unknown prompt: " + verdict.prompt_id);
        }
        matrix.add_verdict(verdict, it->second.count(verdict.requirement_id) > 0);
    }
    return matrix;
}

namespace {

struct MeanSd {
    std::optional<double> mean;
    std::optional<double> sd;
    std::size_t n = 0;
};

MeanSd mean_sd(const std::vector<double>& values) {
    MeanSd out;
    out.n = values.size();
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    out.mean = mean;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        out.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return out;
}

}  // namespace

RequirementStats requirement_stats(const core::SatisfactionMatrix& matrix,
                                   const std::string& requirement_id,
                                   const std::string& model_id) {
    std::vector<double> specified_accs, unspecified_accs;
    for (const auto& [key, cell] : matrix.cells()) {
        if (key.model_id != model_id || key.requirement_id != requirement_id) continue;
        if (cell.n == 0) continue;
        (cell.specified ? specified_accs : unspecified_accs).push_back(cell.accuracy());
    }
    RequirementStats stats;
    stats.requirement_id = requirement_id;
    stats.model_id = model_id;
    const MeanSd spec = mean_sd(specified_accs);
    const MeanSd unspec = mean_sd(unspecified_accs);
    stats.acc_specified = spec.mean;
    stats.sd_specified = spec.sd;
    stats.n_prompts_specified = spec.n;
    stats.acc_unspecified = unspec.mean;
    stats.sd_unspecified = unspec.sd;
    stats.n_prompts_unspecified = unspec.n;
    return stats;
}

std::vector<RequirementStats> all_requirement_stats(const core::SatisfactionMatrix& matrix) {
    std::vector<RequirementStats> out;
    for (const auto& model : matrix.model_ids()) {
        for (const auto& requirement : matrix.requirement_ids(model)) {
            out.push_back(requirement_stats(matrix, requirement, model));
        }
    }
    return out;
}

std::vector<std::string> guessable(const core::SatisfactionMatrix& matrix,
                                   const std::string& model_id,
                                   double threshold) {
    std::vector<std::string> out;
    for (const auto& requirement : matrix.requirement_ids(model_id)) {
        const RequirementStats stats = requirement_stats(matrix, requirement, model_id);
        if (stats.acc_unspecified && *stats.acc_unspecified >= threshold) {
            out.push_back(requirement);
        }
    }
    return out;
}

std::map<std::string, std::size_t> specified_prompt_counts(
    const core::SatisfactionMatrix& matrix, const std::string& model_id) {
    std::map<std::string, std::size_t> counts;
    for (const auto& [key, cell] : matrix.cells()) {
        if (key.model_id != model_id) continue;
        counts.try_emplace(key.requirement_id, 0);
        if (cell.specified) ++counts[key.requirement_id];
    }
    return counts;
}

namespace {

std::vector<std::pair<double, double>> ecdf_points(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::vector<std::pair<double, double>> points;
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        points.emplace_back(values[i], static_cast<double>(i + 1) / n);
    }
    return points;
}

}  // namespace

RegressionReport regression_report(const core::SatisfactionMatrix& matrix_old,
                                   const core::SatisfactionMatrix& matrix_new,
                                   double threshold) {
    const auto old_models = matrix_old.model_ids();
    const auto new_models = matrix_new.model_ids();
    if (old_models.size() != 1 || new_models.size() != 1) {
        throw ConfigError("regression_report expects one model per matrix");
    }
    const std::string& model_old = old_models.front();
    const std::string& model_new = new_models.front();

    // The two matrices must cover the same (prompt, requirement) keys.
    std::set<std::pair<std::string, std::string>> old_keys, new_keys;
    for (const auto& [key, _] : matrix_old.cells()) {
        old_keys.insert({key.prompt_id, key.requirement_id});
    }
    for (const auto& [key, _] : matrix_new.cells()) {
        new_keys.insert({key.prompt_id, key.requirement_id});
    }
    if (old_keys != new_keys) {
        throw IntegrityError("regression_report: matrices cover different keys");
    }

    RegressionReport report;
    report.model_pair = {model_old, model_new};
    report.threshold = threshold;

    std::vector<double> drops_specified, drops_unspecified;
    std::size_t over_specified = 0, over_unspecified = 0;
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>>
        unspec_accs;  // requirement -> (old accs, new accs) over unspecified prompts

    for (const auto& [prompt_id, requirement_id] : old_keys) {
        const core::Cell* cell_old =
            matrix_old.find({model_old, prompt_id, requirement_id});
        const core::Cell* cell_new =
            matrix_new.find({model_new, prompt_id, requirement_id});
        if (cell_old->specified != cell_new->specified) {
            throw IntegrityError("regression_report: specified flags disagree for " +
                                 prompt_id + "/" + requirement_id);
        }
        RegressionEntry entry;
        entry.prompt_id = prompt_id;
        entry.requirement_id = requirement_id;
        entry.specified = cell_old->specified;
        entry.drop = cell_old->accuracy() - cell_new->accuracy();
        if (entry.specified) {
            drops_specified.push_back(entry.drop);
            if (entry.drop > threshold) ++over_specified;
        } else {
            drops_unspecified.push_back(entry.drop);
            if (entry.drop > threshold) ++over_unspecified;
            unspec_accs[requirement_id].first.push_back(cell_old->accuracy());
            unspec_accs[requirement_id].second.push_back(cell_new->accuracy());
        }
        report.entries.push_back(std::move(entry));
    }

    report.cdf_specified = ecdf_points(drops_specified);
    report.cdf_unspecified = ecdf_points(drops_unspecified);
    if (!drops_specified.empty()) {
        report.frac_over_specified =
            static_cast<double>(over_specified) / static_cast<double>(drops_specified.size());
    }
    if (!drops_unspecified.empty()) {
        report.frac_over_unspecified = static_cast<double>(over_unspecified) /
                                       static_cast<double>(drops_unspecified.size());
    }

    for (const auto& [requirement_id, accs] : unspec_accs) {
        auto mean = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double x : v) s += x;
            return s / static_cast<double>(v.size());
        };
        const double drop = mean(accs.first) - mean(accs.second);
        if (drop > threshold) {
            report.flagged_unspecified.emplace_back(requirement_id, drop);
        }
    }
    return report;
}

double objective_accuracy(const core::SatisfactionMatrix& matrix,
                          const std::string& model_id,
                          const std::string& prompt_id,
                          const std::vector<std::string>& required_ids,
                          bool micro) {
    if (required_ids.empty()) {
        throw ConfigError("objective_accuracy: no requirements given");
    }
    double macro_sum = 0.0;
    std::uint64_t pooled_n = 0, pooled_sat = 0;
    for (const auto& requirement_id : required_ids) {
        const core::Cell* cell = matrix.find({model_id, prompt_id, requirement_id});
        if (!cell || cell->n == 0) {
            throw IntegrityError("objective_accuracy: no verdicts for requirement " +
                                 requirement_id + " under prompt " + prompt_id);
        }
        macro_sum += cell->accuracy();
        pooled_n += cell->n;
        pooled_sat += cell->n_satisfied;
    }
    if (micro) {
        return static_cast<double>(pooled_sat) / static_cast<double>(pooled_n);
    }
    return macro_sum / static_cast<double>(required_ids.size());
}

}  // namespace reqlab::harness
