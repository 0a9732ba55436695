#pragma once

#include <map>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "reqlab/providers/cache.hpp"
#include "reqlab/providers/embedding.hpp"
#include "reqlab/providers/provider.hpp"
#include "reqlab/providers/simulated.hpp"

namespace reqlab::providers {

/// Everything built from the providers config block:
///   {"providers": [{"name", "kind": remote|simulated|scripted|offline-embed,
///                   ...kind-specific fields}],
///    "cache_dir": path?, "budget": {"max_calls": n}?}
/// Each completion provider is wrapped with budget accounting and retries;
/// remote providers additionally get the disk cache when cache_dir is set.
struct ProviderSet {
    std::map<std::string, std::shared_ptr<Provider>> completions;
    std::map<std::string, std::shared_ptr<Embedder>> embedders;
    std::map<std::string, std::string> kinds;  // provider name -> config kind
    std::shared_ptr<BudgetMeter> budget;

    std::shared_ptr<Provider> completion(const std::string& name) const;
    std::shared_ptr<Embedder> embedder(const std::string& name) const;
    bool is_remote(const std::string& name) const {
        auto it = kinds.find(name);
        return it != kinds.end() && it->second == "remote";
    }
};

SatisfactionProfile profile_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const SatisfactionProfile& profile);

ProviderSet build_providers(const nlohmann::json& config);

}  // namespace reqlab::providers
