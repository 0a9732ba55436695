#include "reqlab/providers/factory.hpp"

#include "reqlab/providers/remote.hpp"
#include "reqlab/providers/scripted.hpp"

namespace reqlab::providers {

using nlohmann::json;

std::shared_ptr<Provider> ProviderSet::completion(const std::string& name) const {
    auto it = completions.find(name);
    if (it == completions.end()) {
        throw ConfigError("no completion provider named: " + name);
    }
    return it->second;
}

std::shared_ptr<Embedder> ProviderSet::embedder(const std::string& name) const {
    auto it = embedders.find(name);
    if (it == embedders.end()) {
        throw ConfigError("no embedder named: " + name);
    }
    return it->second;
}

SatisfactionProfile profile_from_json(const json& j) {
    SatisfactionProfile profile;
    try {
        for (const auto& [id, entry] : j.at("requirements").items()) {
            SatisfactionProfile::Entry e;
            e.p_specified = entry.at("p_specified").get<double>();
            e.p_unspecified = entry.at("p_unspecified").get<double>();
            profile.requirements[id] = e;
        }
        if (j.contains("interference")) {
            profile.mode = interference_mode_from_string(
                j.at("interference").at("mode").get<std::string>());
            profile.rate = j.at("interference").value("rate", 0.0);
        }
        profile.unspecified_prompt_jitter = j.value("unspecified_prompt_jitter", 0.0);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed satisfaction profile: ") + e.what());
    }
    profile.validate();
    return profile;
}

json profile_to_json(const SatisfactionProfile& profile) {
    json reqs = json::object();
    for (const auto& [id, entry] : profile.requirements) {
        reqs[id] = json{{"p_specified", entry.p_specified},
                        {"p_unspecified", entry.p_unspecified}};
    }
    return json{{"requirements", reqs},
                {"interference", json{{"mode", to_string(profile.mode)},
                                      {"rate", profile.rate}}},
                {"unspecified_prompt_jitter", profile.unspecified_prompt_jitter}};
}

ProviderSet build_providers(const json& config) {
    ProviderSet set;

    std::uint64_t max_calls = 0;
    if (config.contains("budget")) {
        max_calls = config.at("budget").value("max_calls", std::uint64_t{0});
    }
    set.budget = std::make_shared<BudgetMeter>(max_calls);

    std::shared_ptr<DiskCache> cache;
    if (config.contains("cache_dir") && !config.at("cache_dir").get<std::string>().empty()) {
        cache = std::make_shared<DiskCache>(config.at("cache_dir").get<std::string>());
    }

    if (!config.contains("providers")) return set;
    for (const json& p : config.at("providers")) {
        const auto name = p.at("name").get<std::string>();
        const auto kind = p.at("kind").get<std::string>();
        set.kinds[name] = kind;

        if (kind == "offline-embed") {
            set.embedders[name] = std::make_shared<OfflineHashEmbedder>();
            continue;
        }
        if (kind == "remote-embed") {
            RemoteEmbedderConfig cfg;
            cfg.name = name;
            cfg.endpoint = p.at("endpoint").get<std::string>();
            cfg.model_id = p.value("model_id", "");
            if (p.contains("headers_env")) {
                cfg.headers_env =
                    p.at("headers_env").get<std::map<std::string, std::string>>();
            }
            set.embedders[name] = std::make_shared<RemoteEmbedder>(cfg);
            continue;
        }

        std::shared_ptr<Provider> inner;
        std::shared_ptr<DiskCache> provider_cache;
        if (kind == "remote") {
            RemoteConfig cfg;
            cfg.name = name;
            cfg.endpoint = p.at("endpoint").get<std::string>();
            if (p.contains("headers_env")) {
                cfg.headers_env =
                    p.at("headers_env").get<std::map<std::string, std::string>>();
            }
            cfg.timeout_seconds = p.value("timeout_seconds", 60);
            inner = std::make_shared<RemoteProvider>(cfg);
            provider_cache = cache;  // only remote calls are worth disk space
        } else if (kind == "simulated") {
            auto profile = profile_from_json(p.at("profile"));
            const auto seed = p.value("seed", std::uint64_t{0});
            inner = std::make_shared<SimulatedProvider>(std::move(profile), seed, name);
        } else if (kind == "scripted") {
            std::vector<std::string> responses;
            if (p.contains("responses")) {
                responses = p.at("responses").get<std::vector<std::string>>();
            }
            inner = std::make_shared<ScriptedProvider>(std::move(responses), name);
        } else {
            throw ConfigError("unknown provider kind: " + kind);
        }

        set.completions[name] =
            std::make_shared<CachedProvider>(inner, provider_cache, set.budget);
    }
    return set;
}

}  // namespace reqlab::providers
