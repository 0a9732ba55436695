#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reqlab/errors.hpp"

namespace reqlab::providers {

struct CompletionParams {
    double temperature = 0.0;
    std::optional<std::int64_t> seed;
    std::int64_t max_output = 1024;

    bool operator==(const CompletionParams&) const = default;
};

/// One single-turn completion call. prompt_id / example_id / specified_ids
/// are routing metadata: the harness fills them for run bookkeeping and
/// deterministic providers key their draws on them; remote providers
/// ignore them.
struct CompletionRequest {
    std::string model_id;
    std::string system_prompt;
    std::string user_input;
    CompletionParams params;

    std::string prompt_id;
    std::string example_id;
    std::vector<std::string> specified_ids;
};

/// Canonical serialization of the params block, used in cache keys and
/// provider fingerprints.
std::string params_digest_text(const CompletionParams& params);

/// Call-count budget shared across workers. max_calls == 0 means unlimited.
class BudgetMeter {
public:
    explicit BudgetMeter(std::uint64_t max_calls = 0) : max_calls_(max_calls) {}

    /// Reserves one call; throws BudgetExceededError when the cap is hit.
    void charge() {
        std::uint64_t prev = used_.fetch_add(1);
        if (max_calls_ != 0 && prev >= max_calls_) {
            used_.fetch_sub(1);
            throw BudgetExceededError("provider call budget exceeded (max " +
                                      std::to_string(max_calls_) + ")");
        }
    }

    std::uint64_t used() const { return used_.load(); }
    std::uint64_t max_calls() const { return max_calls_; }

private:
    std::atomic<std::uint64_t> used_{0};
    std::uint64_t max_calls_;
};

/// Text-completion backend. Uses the NVI pattern: complete() validates the
/// request invariants, then delegates to do_complete().
class Provider {
public:
    virtual ~Provider() = default;

    virtual std::string name() const = 0;

    std::string complete(const CompletionRequest& request) {
        if (request.params.temperature < 0.0) {
            throw ConfigError("temperature must be >= 0");
        }
        if (request.params.max_output <= 0) {
            throw ConfigError("max_output must be > 0");
        }
        return do_complete(request);
    }

    /// provider name + digest of the decoding params.
    virtual std::string fingerprint(const CompletionRequest& request) const;

    /// Extra bytes mixed into the cache key for providers whose output
    /// depends on more than the request text (e.g. the simulated provider
    /// keys draws on prompt/example ids).
    virtual std::string cache_salt(const CompletionRequest&) const { return {}; }

private:
    virtual std::string do_complete(const CompletionRequest& request) = 0;
};

}  // namespace reqlab::providers
