#include "reqlab/cli/study_config.hpp"

#include <filesystem>

#include "reqlab/errors.hpp"
#include "reqlab/util/fs.hpp"
#include "reqlab/util/rng.hpp"

namespace reqlab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
    return (fs::path(base_dir) / path).string();
}

void require_exists(const std::string& what, const std::string& path) {
    if (!fs::exists(path)) {
        throw ConfigError(what + " does not exist: " + path);
    }
}

}  // namespace

StudyConfig study_config_from_json(const json& j, const std::string& base_dir) {
    StudyConfig config;
    try {
        config.registry_path = resolve(base_dir, j.value("registry", ""));
        config.dataset_path = resolve(base_dir, j.value("dataset", ""));
        if (j.contains("split")) {
            const json& s = j.at("split");
            if (s.contains("ratios")) {
                auto r = s.at("ratios").get<std::vector<double>>();
                if (r.size() != 3) throw ConfigError("split.ratios must have 3 entries");
                config.split_ratios = {r[0], r[1], r[2]};
            }
            config.split_seed = s.value("seed", std::uint64_t{0});
        }
        if (j.contains("providers_block")) {
            config.providers_block = j.at("providers_block");
        } else {
            // the providers factory reads {providers, cache_dir, budget}
            json block = json::object();
            if (j.contains("providers")) block["providers"] = j.at("providers");
            if (j.contains("cache_dir")) {
                block["cache_dir"] = resolve(base_dir, j.at("cache_dir").get<std::string>());
            }
            if (j.contains("budget")) block["budget"] = j.at("budget");
            config.providers_block = block;
        }
        if (j.contains("models")) {
            for (const json& m : j.at("models")) {
                config.models.push_back(
                    {m.at("model_id").get<std::string>(), m.at("provider").get<std::string>()});
            }
        }
        if (j.contains("design")) {
            DesignConfig d;
            d.k = j.at("design").value("k", std::size_t{10});
            d.order_seed = j.at("design").value("order_seed", std::uint64_t{0});
            config.design = d;
        }
        if (j.contains("prompts")) {
            config.prompts_path = resolve(base_dir, j.at("prompts").get<std::string>());
        }
        config.out_dir = resolve(base_dir, j.value("out_dir", "out"));
        config.guessable_threshold = j.value("guessable_threshold", 0.98);
        config.compare_threshold = j.value("compare_threshold", 0.20);
        if (j.contains("judge")) {
            const json& jj = j.at("judge");
            config.plans_path = resolve(base_dir, jj.value("plans", ""));
            config.executor_provider = jj.value("executor", "");
            config.executor_model_id = jj.value("executor_model_id", "");
            config.templates_dir = resolve(base_dir, jj.value("templates_dir", ""));
        }
        if (j.contains("optimizer")) config.optimizer = j.at("optimizer");
        if (j.contains("elicit")) {
            const json& e = j.at("elicit");
            config.elicit_provider = e.value("provider", "");
            config.elicit_model_id = e.value("model_id", "");
            config.embedder_name = e.value("embedder", "");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed study config: ") + e.what());
    }

    if (config.design && config.prompts_path) {
        throw ConfigError("config must set exactly one of design / prompts");
    }

    if (!config.registry_path.empty()) require_exists("registry", config.registry_path);
    if (!config.dataset_path.empty()) require_exists("dataset", config.dataset_path);
    if (config.prompts_path) require_exists("prompts file", *config.prompts_path);

    for (double ratio : config.split_ratios) {
        if (ratio < 0.0) throw ConfigError("split ratios must be non-negative");
    }

    config.digest = util::to_hex(util::fnv1a64(j.dump()));
    return config;
}

StudyConfig load_study_config(const std::string& path) {
    json j;
    try {
        j = json::parse(util::read_file(path));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed study config: ") + e.what());
    }
    return study_config_from_json(j, fs::path(path).parent_path().string());
}

}  // namespace reqlab::cli
