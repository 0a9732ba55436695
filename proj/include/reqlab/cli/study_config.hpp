#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace reqlab::cli {

struct ModelEntry {
    std::string model_id;
    std::string provider;  // completion provider name
};

struct DesignConfig {
    std::size_t k = 10;
    std::uint64_t order_seed = 0;
};

/// The single study configuration file every subcommand consumes. Flags
/// override individual fields (flags win over config). Exactly one of
/// design / prompts_path must be present; referenced paths are checked at
/// load time.
struct StudyConfig {
    std::string registry_path;
    std::string dataset_path;
    std::array<double, 3> split_ratios{0.15, 0.35, 0.50};
    std::uint64_t split_seed = 0;

    nlohmann::json providers_block;  // handed to providers::build_providers
    std::vector<ModelEntry> models;

    std::optional<DesignConfig> design;
    std::optional<std::string> prompts_path;  // explicit prompt file

    std::string out_dir = "out";
    double guessable_threshold = 0.98;
    double compare_threshold = 0.20;

    // judge block
    std::string plans_path;
    std::string executor_provider;
    std::string executor_model_id;
    std::string templates_dir;

    // optimizer block (method-specific fields read by the optimize command)
    nlohmann::json optimizer;

    // elicit block
    std::string elicit_provider;
    std::string elicit_model_id;
    std::string embedder_name;

    /// Digest of the canonicalized config document; stamped into every
    /// output artifact.
    std::string digest;
};

StudyConfig load_study_config(const std::string& path);
StudyConfig study_config_from_json(const nlohmann::json& j,
                                   const std::string& base_dir = "");

}  // namespace reqlab::cli
