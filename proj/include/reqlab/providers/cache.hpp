#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "reqlab/providers/provider.hpp"

namespace reqlab::providers {

/// On-disk response cache: one file per digest under cache_dir. Writes go
/// through a temp file + rename, and a key already present is never
/// rewritten, so there is at most one cache write per key.
class DiskCache {
public:
    explicit DiskCache(std::string cache_dir);

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& value);

private:
    std::string path_for(const std::string& key) const;

    std::string dir_;
    mutable std::mutex mutex_;
};

struct RetryPolicy {
    int max_attempts = 3;
    std::chrono::milliseconds base_delay{250};  // doubled per attempt
};

/// Decorator adding caching, retries, and budget accounting to any
/// provider. Cache hits cost nothing against the budget; transport errors
/// are retried with exponential backoff and then surfaced; every other
/// error passes through untouched.
class CachedProvider final : public Provider {
public:
    CachedProvider(std::shared_ptr<Provider> inner,
                   std::shared_ptr<DiskCache> cache,      // may be null
                   std::shared_ptr<BudgetMeter> budget,   // may be null
                   RetryPolicy retry = {});

    std::string name() const override { return inner_->name(); }
    std::string fingerprint(const CompletionRequest& request) const override {
        return inner_->fingerprint(request);
    }
    std::string cache_salt(const CompletionRequest& request) const override {
        return inner_->cache_salt(request);
    }

    /// Digest of (provider name, model_id, system_prompt, user_input,
    /// params[, provider salt]); any change to any field changes the key.
    std::string cache_key(const CompletionRequest& request) const;

private:
    std::string do_complete(const CompletionRequest& request) override;

    std::shared_ptr<Provider> inner_;
    std::shared_ptr<DiskCache> cache_;
    std::shared_ptr<BudgetMeter> budget_;
    RetryPolicy retry_;
};

}  // namespace reqlab::providers
