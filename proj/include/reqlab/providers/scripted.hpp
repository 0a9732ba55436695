#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "reqlab/providers/provider.hpp"

namespace reqlab::providers {

/// Replays canned responses: exact-match lookup on user_input first, then
/// a queue consumed in call order. Used for deterministic fixtures (judge
/// and proposer scripts) in tests and offline pipelines.
class ScriptedProvider final : public Provider {
public:
    explicit ScriptedProvider(std::vector<std::string> responses = {},
                              std::string name = "scripted")
        : responses_(std::move(responses)), name_(std::move(name)) {}

    void map_input(const std::string& user_input, const std::string& response) {
        std::lock_guard<std::mutex> lock(mutex_);
        by_input_[user_input] = response;
    }

    std::string name() const override { return name_; }

    std::size_t calls() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return requests_.size();
    }

    std::vector<CompletionRequest> requests() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return requests_;
    }

private:
    std::string do_complete(const CompletionRequest& request) override {
        std::lock_guard<std::mutex> lock(mutex_);
        requests_.push_back(request);
        auto it = by_input_.find(request.user_input);
        if (it != by_input_.end()) return it->second;
        if (next_ < responses_.size()) return responses_[next_++];
        throw ConfigError("scripted provider " + name_ + " has no response left");
    }

    std::vector<std::string> responses_;
    std::map<std::string, std::string> by_input_;
    std::size_t next_ = 0;
    std::vector<CompletionRequest> requests_;
    std::string name_;
    mutable std::mutex mutex_;
};

}  // namespace reqlab::providers
