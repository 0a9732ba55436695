#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "reqlab/cli/commands.hpp"
#include "reqlab/cli/study_config.hpp"
#include "reqlab/errors.hpp"

namespace {

reqlab::cli::StudyConfig load_config_or_throw(const std::string& path) {
    if (path.empty()) {
        throw reqlab::ConfigError("this subcommand needs --config PATH");
    }
    return reqlab::cli::load_study_config(path);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace reqlab;

    CLI::App app{"requirements-aware prompt evaluation and optimization"};
    app.require_subcommand(1);

    std::string config_path;
    cli::GlobalOptions global;
    std::int64_t seed_flag = -1;
    app.add_option("--config", config_path, "study config JSON path")->envname("REQLAB_CONFIG");
    app.add_option("--seed", seed_flag, "seed override (wins over config)");
    app.add_option("--parallelism", global.parallelism, "worker pool size");
    app.add_flag("--dry-run", global.dry_run, "print the plan; no writes, no provider calls");

    // compose
    auto* compose = app.add_subcommand("compose", "build the cyclic prompt design");
    std::optional<std::size_t> k_flag;
    std::optional<std::uint64_t> order_seed_flag;
    compose->add_option("--k", k_flag, "requirements per prompt (window size)");
    compose->add_option("--order-seed", order_seed_flag, "requirement order shuffle seed");

    // run
    auto* run = app.add_subcommand("run", "execute (model x prompt x example) cells");
    std::string run_split = "test";
    run->add_option("--split", run_split, "train|validation|test|all (default test)");

    // judge
    app.add_subcommand("judge", "judge every requirement on every run");

    // report
    auto* report = app.add_subcommand("report", "aggregate verdicts into stats");
    std::string report_split = "test";
    report->add_option("--split", report_split, "train|validation|test|all (default test)");

    // compare
    auto* compare = app.add_subcommand("compare", "regression report between two runs");
    std::string report_a, report_b, compare_out = "compare.json";
    double compare_threshold = 0.20;
    compare->add_option("report_a", report_a, "baseline report.json")->required();
    compare->add_option("report_b", report_b, "new report.json")->required();
    compare->add_option("--threshold", compare_threshold, "accuracy-drop threshold");
    compare->add_option("--out", compare_out, "output path");

    // discover
    auto* discover = app.add_subcommand("discover", "inspections needed to find a violation");
    double ps = 0.95, prel = 1.0, pviol = 1.0, pnot = 1.0;
    int curve_max = -1;
    bool print_real = false;
    discover->add_option("--ps", ps, "target discovery probability");
    discover->add_option("--prel", prel, "P(example is relevant)");
    discover->add_option("--pviol", pviol, "P(requirement violated when relevant)");
    discover->add_option("--pnot", pnot, "P(violation noticed)");
    discover->add_option("--curve", curve_max, "print CSV curve up to N inspections");
    discover->add_flag("--real", print_real, "print the raw real-valued N");

    // stats
    auto* stats = app.add_subcommand("stats", "ANOVA tables from a report");
    std::string stats_report, stats_factor = "all", stats_side = "both";
    stats->add_option("--report", stats_report, "report.json path")->required();
    stats->add_option("--factor", stats_factor,
                      "specified|conditional|source|category|model|all");
    stats->add_option("--side", stats_side, "specified|unspecified|both");

    // optimize
    auto* optimize = app.add_subcommand("optimize", "search for a better prompt");
    std::optional<std::string> method_flag;
    std::optional<std::size_t> budget_flag;
    optimize->add_option("--method", method_flag, "tpe|random|exhaustive|copro-r");
    optimize->add_option("--budget", budget_flag, "objective evaluations");

    // elicit
    auto* elicit = app.add_subcommand("elicit", "generate candidate requirements");
    std::string elicit_source, elicit_prompt_file, elicit_outputs, elicit_merge;
    std::optional<double> dedup_threshold;
    elicit->add_option("--source", elicit_source, "extract|brainstorm|error-analysis")
        ->required();
    elicit->add_option("--prompt-file", elicit_prompt_file, "existing prompt (extract)");
    elicit->add_option("--outputs", elicit_outputs, "JSON array of outputs (error-analysis)");
    elicit->add_option("--merge", elicit_merge, "merge with a prior candidates.json");
    elicit->add_option("--dedup-threshold", dedup_threshold,
                       "drop candidates with cosine similarity > threshold");

    // audit
    auto* audit = app.add_subcommand("audit", "stratified verdict sample / agreement");
    std::size_t audit_per_requirement = 20, audit_positives = 10;
    std::string audit_labels;
    audit->add_option("--per-requirement", audit_per_requirement, "sample size per requirement");
    audit->add_option("--positives", audit_positives, "positive verdicts per requirement");
    audit->add_option("--labels", audit_labels, "reviewed sample CSV; computes agreement");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage text
        return cli::kExitUsage;
    }

    if (seed_flag >= 0) global.seed = static_cast<std::uint64_t>(seed_flag);

    try {
        if (compose->parsed()) {
            return cli::cmd_compose(load_config_or_throw(config_path), global, k_flag,
                                    order_seed_flag);
        }
        if (run->parsed()) {
            return cli::cmd_run(load_config_or_throw(config_path), global, run_split);
        }
        if (app.get_subcommand("judge")->parsed()) {
            return cli::cmd_judge(load_config_or_throw(config_path), global);
        }
        if (report->parsed()) {
            return cli::cmd_report(load_config_or_throw(config_path), global, report_split);
        }
        if (compare->parsed()) {
            return cli::cmd_compare(report_a, report_b, compare_threshold, compare_out,
                                    global.dry_run);
        }
        if (discover->parsed()) {
            return cli::cmd_discover(ps, prel, pviol, pnot, curve_max, print_real);
        }
        if (stats->parsed()) {
            return cli::cmd_stats(load_config_or_throw(config_path), stats_report,
                                  stats_factor, stats_side);
        }
        if (optimize->parsed()) {
            return cli::cmd_optimize(load_config_or_throw(config_path), global, method_flag,
                                     budget_flag);
        }
        if (elicit->parsed()) {
            return cli::cmd_elicit(load_config_or_throw(config_path), global, elicit_source,
                                   elicit_prompt_file, elicit_outputs, elicit_merge,
                                   dedup_threshold);
        }
        if (audit->parsed()) {
            return cli::cmd_audit(load_config_or_throw(config_path), global,
                                  audit_per_requirement, audit_positives, audit_labels);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUsage;
    }
    return cli::kExitUsage;
}
