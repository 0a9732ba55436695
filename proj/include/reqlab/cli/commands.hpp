#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reqlab/cli/study_config.hpp"
#include "reqlab/composer/composer.hpp"
#include "reqlab/core/types.hpp"
#include "reqlab/harness/harness.hpp"

namespace reqlab::cli {

/// Exit codes: 0 success, 1 usage/config error (thrown and mapped by
/// main), 2 partial failures (failed cells).
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;

struct GlobalOptions {
    std::size_t parallelism = 1;
    bool dry_run = false;
    std::optional<std::uint64_t> seed;  // flag: wins over config seeds
};

// --- artifact schema helpers (shared with tests) ---------------------------

nlohmann::json design_to_json(const composer::CyclicDesign& design,
                              const std::string& config_digest);
std::vector<core::PromptSpec> prompts_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const core::SatisfactionMatrix& matrix,
                              const std::vector<harness::RequirementStats>& stats,
                              const StudyConfig& config,
                              const std::string& split_name);
core::SatisfactionMatrix matrix_from_report(const nlohmann::json& report);
std::vector<harness::RequirementStats> stats_from_report(const nlohmann::json& report);

std::string csv_escape(const std::string& field);

// --- subcommands ------------------------------------------------------------

int cmd_compose(const StudyConfig& config, const GlobalOptions& global,
                std::optional<std::size_t> k_flag,
                std::optional<std::uint64_t> order_seed_flag);

int cmd_run(const StudyConfig& config, const GlobalOptions& global,
            const std::string& split_name);

int cmd_judge(const StudyConfig& config, const GlobalOptions& global);

int cmd_report(const StudyConfig& config, const GlobalOptions& global,
               const std::string& split_name);

int cmd_compare(const std::string& report_a_path, const std::string& report_b_path,
                double threshold, const std::string& out_path, bool dry_run);

int cmd_discover(double p_s, double p_relevant, double p_violated, double p_noticed,
                 int curve_max, bool print_real);

int cmd_stats(const StudyConfig& config, const std::string& report_path,
              const std::string& factor_name, const std::string& side_name);

int cmd_optimize(const StudyConfig& config, const GlobalOptions& global,
                 std::optional<std::string> method_flag,
                 std::optional<std::size_t> budget_flag);

int cmd_elicit(const StudyConfig& config, const GlobalOptions& global,
               const std::string& source, const std::string& prompt_file,
               const std::string& outputs_file, const std::string& merge_file,
               std::optional<double> dedup_threshold);

int cmd_audit(const StudyConfig& config, const GlobalOptions& global,
              std::size_t per_requirement, std::size_t positives,
              const std::string& labels_path);

}  // namespace reqlab::cli
