#include "reqlab/cli/commands.hpp"

#include <ctime>
#include <filesystem>
#include <iostream>
#include <set>
#include <sstream>

#include "reqlab/analysis/analysis.hpp"
#include "reqlab/core/registry.hpp"
#include "reqlab/core/split.hpp"
#include "reqlab/elicitation/elicitation.hpp"
#include "reqlab/harness/objective.hpp"
#include "reqlab/harness/run_store.hpp"
#include "reqlab/optimizers/tpe.hpp"
#include "reqlab/providers/factory.hpp"
#include "reqlab/util/fs.hpp"
#include "reqlab/validators/audit.hpp"
#include "reqlab/validators/programmatic.hpp"

namespace reqlab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

core::Registry load_registry_checked(const StudyConfig& config) {
    if (config.registry_path.empty()) {
        throw ConfigError("config has no registry path");
    }
    return core::load_registry(config.registry_path, validators::is_known_validator);
}

std::vector<core::Example> select_split(const std::vector<core::Example>& examples,
                                        const core::DatasetSplit& split,
                                        const std::string& split_name) {
    std::set<std::string> wanted;
    if (split_name == "train") {
        wanted.insert(split.train.begin(), split.train.end());
    } else if (split_name == "validation") {
        wanted.insert(split.validation.begin(), split.validation.end());
    } else if (split_name == "test") {
        wanted.insert(split.test.begin(), split.test.end());
    } else if (split_name == "all") {
        for (const auto& e : examples) wanted.insert(e.id);
    } else {
        throw ConfigError("unknown split: " + split_name);
    }
    std::vector<core::Example> out;
    for (const auto& e : examples) {
        if (wanted.count(e.id)) out.push_back(e);
    }
    return out;
}

std::vector<core::PromptSpec> load_prompts(const StudyConfig& config) {
    std::string path;
    if (config.prompts_path) {
        path = *config.prompts_path;
    } else {
        path = (fs::path(config.out_dir) / "design.json").string();
        if (!fs::exists(path)) {
            throw ConfigError("no design file at " + path + "; run compose first");
        }
    }
    return prompts_from_json(json::parse(util::read_file(path)));
}

std::string runs_dir(const StudyConfig& config) {
    return (fs::path(config.out_dir) / "runs").string();
}
std::string verdicts_dir(const StudyConfig& config) {
    return (fs::path(config.out_dir) / "verdicts").string();
}
std::string reports_dir(const StudyConfig& config) {
    return (fs::path(config.out_dir) / "reports").string();
}

void print_failures(const harness::ExecutionSummary& summary, const std::string& stage) {
    if (summary.clean()) return;
    std::cerr << stage << ": " << summary.failures.size() << " failed cells\n";
    for (const auto& f : summary.failures) {
        std::cerr << "  " << f.model_id << "/" << f.prompt_id << "/" << f.example_id;
        if (!f.requirement_id.empty()) std::cerr << "/" << f.requirement_id;
        std::cerr << ": " << f.error << "\n";
    }
}

json optional_to_json(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> optional_from_json(const json& v) {
    return v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
}

}  // namespace

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

// ---------------------------------------------------------------------------
// Artifact schemas
// ---------------------------------------------------------------------------

json design_to_json(const composer::CyclicDesign& design, const std::string& config_digest) {
    json prompts = json::array();
    for (const auto& prompt : design.prompts) {
        prompts.push_back(json{{"id", prompt.id},
                               {"task_id", prompt.task_id},
                               {"requirement_ids", prompt.requirement_ids},
                               {"rendered", prompt.rendered}});
    }
    return json{{"config_digest", config_digest},
                {"order", design.requirement_order},
                {"k", design.window_k},
                {"prompts", prompts}};
}

std::vector<core::PromptSpec> prompts_from_json(const json& doc) {
    const json& list = doc.is_array() ? doc : doc.at("prompts");
    std::vector<core::PromptSpec> prompts;
    for (const json& p : list) {
        core::PromptSpec spec;
        spec.id = p.at("id").get<std::string>();
        spec.task_id = p.value("task_id", "");
        spec.requirement_ids = p.at("requirement_ids").get<std::vector<std::string>>();
        spec.rendered = p.at("rendered").get<std::string>();
        prompts.push_back(std::move(spec));
    }
    return prompts;
}

json report_to_json(const core::SatisfactionMatrix& matrix,
                    const std::vector<harness::RequirementStats>& stats,
                    const StudyConfig& config,
                    const std::string& split_name) {
    json cells = json::array();
    for (const auto& [key, cell] : matrix.cells()) {
        cells.push_back(json{{"model_id", key.model_id},
                             {"prompt_id", key.prompt_id},
                             {"requirement_id", key.requirement_id},
                             {"n", cell.n},
                             {"n_satisfied", cell.n_satisfied},
                             {"specified", cell.specified}});
    }
    json stat_rows = json::array();
    for (const auto& row : stats) {
        stat_rows.push_back(json{{"requirement_id", row.requirement_id},
                                 {"model_id", row.model_id},
                                 {"acc_specified", optional_to_json(row.acc_specified)},
                                 {"sd_specified", optional_to_json(row.sd_specified)},
                                 {"acc_unspecified", optional_to_json(row.acc_unspecified)},
                                 {"sd_unspecified", optional_to_json(row.sd_unspecified)},
                                 {"n_prompts_specified", row.n_prompts_specified},
                                 {"n_prompts_unspecified", row.n_prompts_unspecified}});
    }
    json guessable_map = json::object();
    for (const auto& model : matrix.model_ids()) {
        guessable_map[model] = harness::guessable(matrix, model, config.guessable_threshold);
    }
    return json{{"config_digest", config.digest},
                {"split", split_name},
                {"guessable_threshold", config.guessable_threshold},
                {"cells", cells},
                {"stats", stat_rows},
                {"guessable", guessable_map}};
}

core::SatisfactionMatrix matrix_from_report(const json& report) {
    core::SatisfactionMatrix matrix;
    for (const json& c : report.at("cells")) {
        core::CellKey key{c.at("model_id").get<std::string>(),
                          c.at("prompt_id").get<std::string>(),
                          c.at("requirement_id").get<std::string>()};
        core::Cell cell;
        cell.n = c.at("n").get<std::uint64_t>();
        cell.n_satisfied = c.at("n_satisfied").get<std::uint64_t>();
        cell.specified = c.at("specified").get<bool>();
        matrix.set_cell(key, cell);
    }
    return matrix;
}

std::vector<harness::RequirementStats> stats_from_report(const json& report) {
    std::vector<harness::RequirementStats> stats;
    for (const json& r : report.at("stats")) {
        harness::RequirementStats row;
        row.requirement_id = r.at("requirement_id").get<std::string>();
        row.model_id = r.at("model_id").get<std::string>();
        row.acc_specified = optional_from_json(r.at("acc_specified"));
        row.sd_specified = optional_from_json(r.at("sd_specified"));
        row.acc_unspecified = optional_from_json(r.at("acc_unspecified"));
        row.sd_unspecified = optional_from_json(r.at("sd_unspecified"));
        row.n_prompts_specified = r.at("n_prompts_specified").get<std::size_t>();
        row.n_prompts_unspecified = r.at("n_prompts_unspecified").get<std::size_t>();
        stats.push_back(std::move(row));
    }
    return stats;
}

// ---------------------------------------------------------------------------
// compose
// ---------------------------------------------------------------------------

int cmd_compose(const StudyConfig& config, const GlobalOptions& global,
                std::optional<std::size_t> k_flag,
                std::optional<std::uint64_t> order_seed_flag) {
    const core::Registry registry = load_registry_checked(config);

    DesignConfig design_config = config.design.value_or(DesignConfig{});
    if (!config.design && !k_flag) {
        throw ConfigError("compose needs a design block in the config or --k");
    }
    if (k_flag) design_config.k = *k_flag;
    if (order_seed_flag) design_config.order_seed = *order_seed_flag;
    else if (global.seed) design_config.order_seed = *global.seed;

    const auto order = composer::shuffle_order(registry.canonical_order,
                                               design_config.order_seed);
    const auto design = composer::cyclic_design(registry.task, registry, order,
                                                design_config.k);
    const json doc = design_to_json(design, config.digest);
    const std::string path = (fs::path(config.out_dir) / "design.json").string();

    if (global.dry_run) {
        std::cout << "compose: would write " << path << " (" << design.prompts.size()
                  << " prompts, k=" << design.window_k << ")\n";
        return kExitOk;
    }
    util::write_file(path, doc.dump(2) + "\n");
    std::cout << doc.dump(2) << "\n";
    std::cerr << "compose: wrote " << path << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

int cmd_run(const StudyConfig& config, const GlobalOptions& global,
            const std::string& split_name) {
    const core::Registry registry = load_registry_checked(config);
    (void)registry;  // validated; prompts reference its ids
    const auto dataset = core::load_dataset(config.dataset_path);
    const auto split = core::split_dataset(dataset, config.split_ratios, config.split_seed);
    const auto examples = select_split(dataset, split, split_name);
    const auto prompts = load_prompts(config);
    if (config.models.empty()) throw ConfigError("config has no models");

    if (global.dry_run) {
        for (const auto& model : config.models) {
            for (const auto& prompt : prompts) {
                for (const auto& example : examples) {
                    std::cout << "plan: model=" << model.model_id
                              << " prompt=" << prompt.id << " example=" << example.id
                              << "\n";
                }
            }
        }
        std::cout << "run: " << config.models.size() << " models x " << prompts.size()
                  << " prompts x " << examples.size() << " examples ("
                  << config.models.size() * prompts.size() * examples.size()
                  << " cells), split=" << split_name << "\n";
        return kExitOk;
    }

    const auto providers = providers::build_providers(config.providers_block);
    harness::RunStore store = harness::RunStore::load_dir(runs_dir(config));

    harness::ExecutionSummary total;
    for (const auto& model : config.models) {
        auto provider = providers.completion(model.provider);
        const std::int64_t created_at =
            providers.is_remote(model.provider)
                ? static_cast<std::int64_t>(std::time(nullptr))
                : 0;
        auto summary =
            harness::run_matrix(store, {model.model_id}, prompts, examples, *provider,
                                global.parallelism, created_at);
        total.executed += summary.executed;
        total.skipped += summary.skipped;
        total.failures.insert(total.failures.end(), summary.failures.begin(),
                              summary.failures.end());
    }
    store.save_dir(runs_dir(config), config.digest);

    std::cerr << "run: executed " << total.executed << " cells, skipped "
              << total.skipped << " existing\n";
    print_failures(total, "run");
    return total.clean() ? kExitOk : kExitPartial;
}

// ---------------------------------------------------------------------------
// judge
// ---------------------------------------------------------------------------

int cmd_judge(const StudyConfig& config, const GlobalOptions& global) {
    const core::Registry registry = load_registry_checked(config);
    const harness::RunStore runs = harness::RunStore::load_dir(runs_dir(config));

    if (global.dry_run) {
        std::cout << "judge: " << runs.size() << " runs x " << registry.size()
                  << " requirements (" << runs.size() * registry.size()
                  << " verdicts)\n";
        return kExitOk;
    }

    harness::JudgeContext context;
    context.task = registry.task;
    if (!config.dataset_path.empty()) {
        for (const auto& example : core::load_dataset(config.dataset_path)) {
            context.example_inputs[example.id] = example.input;
        }
    }
    if (!config.templates_dir.empty()) {
        context.templates = validators::load_templates(config.templates_dir);
    }

    // Judge-bound requirements need an executor and frozen plans; plans
    // missing from the plan file are generated once via the planner.
    bool needs_judge = false;
    for (const auto& requirement : registry.requirements) {
        if (requirement.validator_ref == "judge") needs_judge = true;
    }
    providers::ProviderSet providers;
    std::shared_ptr<providers::Provider> executor;
    validators::PlanBook plans;
    if (needs_judge) {
        providers = providers::build_providers(config.providers_block);
        if (config.executor_provider.empty()) {
            throw ConfigError("registry uses judge validators; config.judge.executor missing");
        }
        executor = providers.completion(config.executor_provider);
        context.executor = executor.get();
        context.executor_model_id = config.executor_model_id;

        const std::string plans_path =
            config.plans_path.empty()
                ? (fs::path(config.registry_path).parent_path() / "plans.json").string()
                : config.plans_path;
        if (fs::exists(plans_path)) plans = validators::load_plans(plans_path);
        bool added = false;
        for (const auto& requirement : registry.requirements) {
            if (requirement.validator_ref != "judge" || plans.count(requirement.id)) continue;
            plans[requirement.id] = validators::plan_validator(
                requirement, registry.task, {}, *executor, config.executor_model_id,
                context.templates);
            added = true;
        }
        if (added) validators::save_plans(plans, plans_path);
        context.plans = &plans;
    }

    harness::VerdictStore verdicts = harness::VerdictStore::load_dir(verdicts_dir(config));
    const auto summary =
        harness::judge_all(verdicts, runs, registry, context, global.parallelism);
    verdicts.save_dir(verdicts_dir(config), config.digest);

    std::cerr << "judge: executed " << summary.executed << " verdicts, skipped "
              << summary.skipped << " existing\n";
    print_failures(summary, "judge");
    return summary.clean() ? kExitOk : kExitPartial;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const StudyConfig& config, const GlobalOptions& global,
               const std::string& split_name) {
    const auto dataset = core::load_dataset(config.dataset_path);
    const auto split = core::split_dataset(dataset, config.split_ratios, config.split_seed);
    const auto examples = select_split(dataset, split, split_name);
    std::set<std::string> example_ids;
    for (const auto& e : examples) example_ids.insert(e.id);

    const auto prompts = load_prompts(config);
    const harness::VerdictStore store = harness::VerdictStore::load_dir(verdicts_dir(config));
    std::vector<core::VerdictRecord> verdicts;
    for (const auto& record : store.records()) {
        if (example_ids.count(record.example_id)) verdicts.push_back(record);
    }

    const auto matrix = harness::aggregate(verdicts, prompts);
    const auto stats = harness::all_requirement_stats(matrix);
    const json report = report_to_json(matrix, stats, config, split_name);

    const std::string json_path = (fs::path(reports_dir(config)) / "report.json").string();
    const std::string csv_path =
        (fs::path(reports_dir(config)) / "requirement_stats.csv").string();

    if (global.dry_run) {
        std::cout << "report: would write " << json_path << " and " << csv_path << " ("
                  << stats.size() << " stat rows over " << verdicts.size()
                  << " verdicts)\n";
        return kExitOk;
    }

    std::ostringstream csv;
    csv << "requirement_id,model_id,acc_specified,sd_specified,acc_unspecified,"
           "sd_unspecified,n_prompts_specified,n_prompts_unspecified\n";
    auto cell = [](const std::optional<double>& v) {
        if (!v) return std::string();
        std::ostringstream out;
        out.precision(17);
        out << *v;
        return out.str();
    };
    for (const auto& row : stats) {
        csv << csv_escape(row.requirement_id) << "," << csv_escape(row.model_id) << ","
            << cell(row.acc_specified) << "," << cell(row.sd_specified) << ","
            << cell(row.acc_unspecified) << "," << cell(row.sd_unspecified) << ","
            << row.n_prompts_specified << "," << row.n_prompts_unspecified << "\n";
    }

    util::write_file(json_path, report.dump(2) + "\n");
    util::write_file(csv_path, csv.str());
    std::cout << report.dump(2) << "\n";
    std::cerr << "report: wrote " << json_path << " and " << csv_path << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

int cmd_compare(const std::string& report_a_path, const std::string& report_b_path,
                double threshold, const std::string& out_path, bool dry_run) {
    const json report_a = json::parse(util::read_file(report_a_path));
    const json report_b = json::parse(util::read_file(report_b_path));
    const auto matrix_a = matrix_from_report(report_a);
    const auto matrix_b = matrix_from_report(report_b);

    const auto regression = harness::regression_report(matrix_a, matrix_b, threshold);

    json entries = json::array();
    for (const auto& entry : regression.entries) {
        entries.push_back(json{{"prompt_id", entry.prompt_id},
                               {"requirement_id", entry.requirement_id},
                               {"specified", entry.specified},
                               {"drop", entry.drop}});
    }
    auto cdf_json = [](const std::vector<std::pair<double, double>>& cdf) {
        json out = json::array();
        for (const auto& [value, fraction] : cdf) {
            out.push_back(json{{"drop", value}, {"fraction", fraction}});
        }
        return out;
    };
    json flagged = json::array();
    for (const auto& [requirement_id, drop] : regression.flagged_unspecified) {
        flagged.push_back(json{{"requirement_id", requirement_id}, {"drop", drop}});
    }
    const json doc{{"model_old", regression.model_pair.first},
                   {"model_new", regression.model_pair.second},
                   {"threshold", regression.threshold},
                   {"config_digest_old", report_a.value("config_digest", "")},
                   {"config_digest_new", report_b.value("config_digest", "")},
                   {"entries", entries},
                   {"cdf_specified", cdf_json(regression.cdf_specified)},
                   {"cdf_unspecified", cdf_json(regression.cdf_unspecified)},
                   {"frac_over_specified", regression.frac_over_specified},
                   {"frac_over_unspecified", regression.frac_over_unspecified},
                   {"flagged_unspecified", flagged}};

    if (dry_run) {
        std::cout << "compare: would write " << out_path << " ("
                  << regression.entries.size() << " entries)\n";
        return kExitOk;
    }
    util::write_file(out_path, doc.dump(2) + "\n");

    std::cout << "regression " << regression.model_pair.first << " -> "
              << regression.model_pair.second << " (threshold " << threshold << ")\n";
    std::cout << "frac over threshold: specified " << regression.frac_over_specified
              << ", unspecified " << regression.frac_over_unspecified << "\n";
    if (regression.flagged_unspecified.empty()) {
        std::cout << "no requirement's unspecified accuracy dropped more than "
                  << threshold << "\n";
    } else {
        std::cout << "flagged requirements (unspecified accuracy drop > " << threshold
                  << "):\n";
        for (const auto& [requirement_id, drop] : regression.flagged_unspecified) {
            std::cout << "  " << requirement_id << ": -" << drop << "\n";
        }
    }
    std::cerr << "compare: wrote " << out_path << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// discover
// ---------------------------------------------------------------------------

int cmd_discover(double p_s, double p_relevant, double p_violated, double p_noticed,
                 int curve_max, bool print_real) {
    analysis::DiscoveryParams params;
    params.p_s = p_s;
    params.p_relevant = p_relevant;
    params.p_violated = p_violated;
    params.p_noticed = p_noticed;

    if (curve_max >= 0) {
        std::cout << "n,probability\n";
        std::ostringstream out;
        out.precision(12);
        for (int n = 0; n <= curve_max; ++n) {
            out.str("");
            out << analysis::discovery_probability(static_cast<std::uint64_t>(n), params);
            std::cout << n << "," << out.str() << "\n";
        }
        return kExitOk;
    }
    if (print_real) {
        std::ostringstream out;
        out.precision(12);
        out << analysis::inspections_needed_real(params);
        std::cout << out.str() << "\n";
        return kExitOk;
    }
    std::cout << analysis::inspections_needed(params) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

int cmd_stats(const StudyConfig& config, const std::string& report_path,
              const std::string& factor_name, const std::string& side_name) {
    const core::Registry registry = load_registry_checked(config);
    const json report = json::parse(util::read_file(report_path));
    const auto stats = stats_from_report(report);

    std::map<std::string, core::Requirement> metadata;
    for (const auto& requirement : registry.requirements) {
        metadata[requirement.id] = requirement;
    }

    analysis::Side side = analysis::Side::both;
    if (side_name == "specified") side = analysis::Side::specified;
    else if (side_name == "unspecified") side = analysis::Side::unspecified;
    else if (side_name != "both") throw ConfigError("unknown side: " + side_name);

    std::vector<analysis::Factor> factors;
    if (factor_name == "all") {
        factors = {analysis::Factor::specified, analysis::Factor::conditional,
                   analysis::Factor::source, analysis::Factor::category,
                   analysis::Factor::model};
    } else {
        factors = {analysis::factor_from_string(factor_name)};
    }

    std::cout << "factor,outcome,F,df_between,df_within,p_value,group_means\n";
    for (const auto factor : factors) {
        analysis::FactorAnalysis result;
        try {
            result = analysis::factor_analysis(stats, metadata, factor, side);
        } catch (const ConfigError& e) {
            std::cerr << "stats: skipping factor " << analysis::to_string(factor) << ": "
                      << e.what() << "\n";
            continue;
        }
        auto means_text = [](const std::map<std::string, double>& means) {
            std::ostringstream out;
            out.precision(6);
            bool first = true;
            for (const auto& [level, mean] : means) {
                if (!first) out << "|";
                first = false;
                out << level << "=" << mean;
            }
            return out.str();
        };
        auto row = [&](const char* outcome, const analysis::AnovaResult& anova,
                       const std::map<std::string, double>& means) {
            std::ostringstream out;
            out.precision(9);
            out << analysis::to_string(factor) << "," << outcome << "," << anova.f << ","
                << anova.df_between << "," << anova.df_within << "," << anova.p_value
                << "," << csv_escape(means_text(means));
            std::cout << out.str() << "\n";
        };
        row("accuracy", result.accuracy, result.group_mean_accuracy);
        row("sd", result.sd, result.group_mean_sd);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

int cmd_optimize(const StudyConfig& config, const GlobalOptions& global,
                 std::optional<std::string> method_flag,
                 std::optional<std::size_t> budget_flag) {
    const core::Registry registry = load_registry_checked(config);
    const auto dataset = core::load_dataset(config.dataset_path);
    const auto split = core::split_dataset(dataset, config.split_ratios, config.split_seed);
    if (config.models.empty()) throw ConfigError("config has no models");
    const ModelEntry& model = config.models.front();

    const json& opt_config = config.optimizer;
    const std::string method = method_flag.value_or(opt_config.value("method", "tpe"));
    const std::size_t budget = budget_flag.value_or(opt_config.value("budget", std::size_t{9}));
    const std::uint64_t seed = global.seed.value_or(opt_config.value("seed", std::uint64_t{0}));
    const std::size_t n = registry.size();

    if (global.dry_run) {
        std::cout << "optimize: method=" << method << " budget=" << budget << " n=" << n
                  << " seed=" << seed << "\n";
        return kExitOk;
    }

    const auto providers = providers::build_providers(config.providers_block);
    auto provider = providers.completion(model.provider);

    harness::PipelineObjective validation_ctx;
    validation_ctx.registry = &registry;
    validation_ctx.examples = select_split(dataset, split, "validation");
    validation_ctx.provider = provider.get();
    validation_ctx.model_id = model.model_id;
    validation_ctx.parallelism = global.parallelism;

    harness::PipelineObjective test_ctx = validation_ctx;
    test_ctx.examples = select_split(dataset, split, "test");

    json doc;
    doc["config_digest"] = config.digest;
    doc["method"] = method;
    doc["budget"] = budget;
    doc["seed"] = seed;
    doc["n"] = n;

    auto trials_json = [](const opt::TrialHistory& history) {
        json out = json::array();
        for (const auto& trial : history) {
            out.push_back(json{{"bits", opt::bits_to_string(trial.bits)},
                               {"score", trial.score},
                               {"tokens", trial.tokens}});
        }
        return out;
    };

    if (method == "tpe" || method == "random" || method == "exhaustive") {
        const opt::Objective objective = harness::subset_objective(validation_ctx);
        opt::Trial best;
        if (method == "tpe") {
            opt::TpeConfig tpe;
            tpe.budget = budget;
            tpe.seed = seed;
            tpe.n_startup = opt_config.value("n_startup", tpe.n_startup);
            tpe.gamma = opt_config.value("gamma", tpe.gamma);
            tpe.n_candidates = opt_config.value("n_candidates", tpe.n_candidates);
            tpe.prior_weight = opt_config.value("prior_weight", tpe.prior_weight);
            const auto result = opt::tpe_optimize(objective, n, tpe);
            best = result.best;
            doc["trials"] = trials_json(result.history);
        } else if (method == "random") {
            const auto result = opt::random_search(objective, n, budget, seed);
            best = result.best;
            doc["trials"] = trials_json(result.history);
        } else {
            best = opt::exhaustive_optimize(objective, n,
                                            opt_config.value("max_bits", std::size_t{20}));
            doc["trials"] = json::array();
        }
        const core::PromptSpec best_prompt =
            composer::subset_prompt(registry.task, registry, best.bits);
        const opt::Objective test_objective = harness::subset_objective(test_ctx);
        doc["best"] = json{{"bits", opt::bits_to_string(best.bits)},
                           {"score", best.score},
                           {"score_test", test_objective.score(best.bits)},
                           {"tokens", best.tokens},
                           {"prompt", best_prompt.rendered}};
    } else if (method == "copro-r") {
        const std::string proposer_name = opt_config.value("proposer", "");
        if (proposer_name.empty()) {
            throw ConfigError("copro-r needs optimizer.proposer in the config");
        }
        auto proposer = providers.completion(proposer_name);
        const std::string proposer_model = opt_config.value("proposer_model_id", "");
        const std::size_t breadth = opt_config.value("breadth", std::size_t{3});

        // Seed prompt: every requirement specified (the fully-specified
        // starting point the rewriters are meant to improve).
        const opt::BitVector all_ones(n, 1);
        const core::PromptSpec seed_prompt =
            composer::subset_prompt(registry.task, registry, all_ones);

        validators::Templates templates = validators::default_templates();
        if (!config.templates_dir.empty()) {
            templates = validators::load_templates(config.templates_dir);
        }
        const auto scorer = [&](const std::string& text) {
            return harness::score_prompt_text(validation_ctx, text);
        };
        const auto result =
            opt::copro_r_optimize(seed_prompt.rendered, *proposer, proposer_model, scorer,
                                  budget, breadth, templates);

        json candidates = json::array();
        for (const auto& candidate : result.candidates) {
            candidates.push_back(json{{"round", candidate.round},
                                      {"score", candidate.score},
                                      {"tokens", composer::count_tokens(candidate.text)},
                                      {"text", candidate.text}});
        }
        doc["trials"] = candidates;
        doc["failures"] = result.failures;
        doc["best"] = json{{"prompt", result.best_prompt},
                           {"score", result.best_score},
                           {"score_test",
                            harness::score_prompt_text(test_ctx, result.best_prompt).objective},
                           {"tokens", composer::count_tokens(result.best_prompt)}};
    } else {
        throw ConfigError("unknown optimize method: " + method);
    }

    const std::string path =
        (fs::path(reports_dir(config)) / ("study_" + method + ".json")).string();
    util::write_file(path, doc.dump(2) + "\n");
    std::cout << doc.dump(2) << "\n";
    std::cerr << "optimize: wrote " << path << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// elicit
// ---------------------------------------------------------------------------

int cmd_elicit(const StudyConfig& config, const GlobalOptions& global,
               const std::string& source, const std::string& prompt_file,
               const std::string& outputs_file, const std::string& merge_file,
               std::optional<double> dedup_threshold) {
    const core::Registry registry = load_registry_checked(config);
    std::vector<std::string> existing;
    for (const auto& requirement : registry.requirements) existing.push_back(requirement.text);

    if (global.dry_run) {
        std::cout << "elicit: source=" << source << " (no provider calls)\n";
        return kExitOk;
    }

    const auto providers = providers::build_providers(config.providers_block);
    if (config.elicit_provider.empty()) {
        throw ConfigError("elicit needs an elicit.provider in the config");
    }
    auto provider = providers.completion(config.elicit_provider);
    validators::Templates templates = validators::default_templates();
    if (!config.templates_dir.empty()) {
        templates = validators::load_templates(config.templates_dir);
    }

    std::vector<elicit::CandidateRequirement> candidates;
    if (!merge_file.empty()) {
        for (const json& c : json::parse(util::read_file(merge_file)).at("candidates")) {
            candidates.push_back({c.at("text").get<std::string>(),
                                  core::source_from_string(c.at("source").get<std::string>()),
                                  c.value("origin_ref", "")});
        }
    }

    if (source == "extract") {
        if (prompt_file.empty()) throw ConfigError("elicit --source extract needs --prompt-file");
        const auto extracted = elicit::extract_from_prompt(
            util::read_file(prompt_file), *provider, config.elicit_model_id, templates);
        candidates.insert(candidates.end(), extracted.begin(), extracted.end());
    } else if (source == "brainstorm") {
        const auto brainstormed = elicit::brainstorm(registry.task, existing, *provider,
                                                     config.elicit_model_id, templates);
        if (brainstormed.empty()) std::cerr << "elicit: warning: no candidates parsed\n";
        candidates.insert(candidates.end(), brainstormed.begin(), brainstormed.end());
    } else if (source == "error-analysis") {
        if (outputs_file.empty()) {
            throw ConfigError("elicit --source error-analysis needs --outputs");
        }
        const auto outputs =
            json::parse(util::read_file(outputs_file)).get<std::vector<std::string>>();
        const auto analyzed = elicit::error_analysis(registry.task, existing, outputs,
                                                     *provider, config.elicit_model_id,
                                                     templates);
        candidates.insert(candidates.end(), analyzed.begin(), analyzed.end());
    } else {
        throw ConfigError("unknown elicit source: " + source);
    }

    if (dedup_threshold) {
        const std::string embedder_name =
            config.embedder_name.empty() ? "offline-embed" : config.embedder_name;
        std::shared_ptr<providers::Embedder> embedder;
        if (providers.embedders.count(embedder_name)) {
            embedder = providers.embedder(embedder_name);
        } else {
            embedder = std::make_shared<providers::OfflineHashEmbedder>();
        }
        candidates = elicit::dedup(candidates, *embedder, *dedup_threshold);
    }

    json out = json::object();
    out["config_digest"] = config.digest;
    out["candidates"] = json::array();
    std::ostringstream review;
    review << "text,source,keep\n";
    for (const auto& candidate : candidates) {
        out["candidates"].push_back(json{{"text", candidate.text},
                                         {"source", core::to_string(candidate.source)},
                                         {"origin_ref", candidate.origin_ref}});
        review << csv_escape(candidate.text) << "," << core::to_string(candidate.source)
               << ",yes\n";
    }

    const std::string json_path = (fs::path(config.out_dir) / "candidates.json").string();
    const std::string csv_path = (fs::path(config.out_dir) / "review.csv").string();
    util::write_file(json_path, out.dump(2) + "\n");
    util::write_file(csv_path, review.str());
    std::cout << out.dump(2) << "\n";
    std::cerr << "elicit: wrote " << json_path << " and " << csv_path << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------------

int cmd_audit(const StudyConfig& config, const GlobalOptions& global,
              std::size_t per_requirement, std::size_t positives,
              const std::string& labels_path) {
    const harness::VerdictStore store = harness::VerdictStore::load_dir(verdicts_dir(config));
    const auto records = store.records();

    if (!labels_path.empty()) {
        // Agreement mode: compare stored verdicts against human labels.
        std::map<core::VerdictKey, bool> reference;
        std::map<core::VerdictKey, bool> predicted;
        std::istringstream in(util::read_file(labels_path));
        std::string line;
        std::getline(in, line);  // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream row(line);
            std::string model, prompt, example, requirement, predicted_text, human;
            std::getline(row, model, ',');
            std::getline(row, prompt, ',');
            std::getline(row, example, ',');
            std::getline(row, requirement, ',');
            std::getline(row, predicted_text, ',');
            std::getline(row, human, ',');
            if (human.empty()) continue;
            core::VerdictKey key{model, prompt, example, requirement};
            const core::VerdictRecord* record = store.find(key);
            if (!record) throw IntegrityError("label for unknown verdict: " + line);
            reference[key] = (human == "true" || human == "1" || human == "yes");
            predicted[key] = record->satisfied;
        }
        const auto report = validators::agreement(predicted, reference);
        json per_requirement_json = json::object();
        for (const auto& [requirement_id, fraction] : report.per_requirement) {
            per_requirement_json[requirement_id] = fraction;
        }
        const json doc{{"overall", report.overall},
                       {"per_requirement", per_requirement_json},
                       {"mean", report.mean},
                       {"sd", report.sd}};
        std::cout << doc.dump(2) << "\n";
        return kExitOk;
    }

    const std::uint64_t seed = global.seed.value_or(0);
    const auto sample =
        validators::stratified_audit_sample(records, per_requirement, positives, seed);

    std::ostringstream csv;
    csv << "model_id,prompt_id,example_id,requirement_id,predicted,human\n";
    for (const auto& key : sample) {
        const core::VerdictRecord* record = store.find(key);
        csv << csv_escape(key.model_id) << "," << csv_escape(key.prompt_id) << ","
            << csv_escape(key.example_id) << "," << csv_escape(key.requirement_id) << ","
            << (record->satisfied ? "true" : "false") << ",\n";
    }

    const std::string path = (fs::path(config.out_dir) / "audit_sample.csv").string();
    if (global.dry_run) {
        std::cout << "audit: would write " << path << " (" << sample.size() << " rows)\n";
        return kExitOk;
    }
    util::write_file(path, csv.str());
    std::cout << csv.str();
    std::cerr << "audit: wrote " << path << "\n";
    return kExitOk;
}

}  // namespace reqlab::cli
