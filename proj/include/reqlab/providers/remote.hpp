#pragma once

#include <map>
#include <string>

#include "reqlab/providers/provider.hpp"

namespace reqlab::providers {

/// Generic HTTP+JSON chat-completion backend. No vendor is hard-coded:
/// the endpoint, extra headers, and model id all come from configuration,
/// and credentials are read from the environment variables named in
/// headers_env (never from config values or flags).
///
/// Request shape:  {"model", "messages":[{system},{user}], "temperature",
///                  "max_tokens"[, "seed"]}
/// Response shape: {"choices":[{"message":{"content": ...}}]}
struct RemoteConfig {
    std::string name = "remote";
    std::string endpoint;  // full URL, e.g. http://host:8080/v1/chat/completions
    std::map<std::string, std::string> headers_env;  // header name -> env var name
    int timeout_seconds = 60;
};

class RemoteProvider final : public Provider {
public:
    explicit RemoteProvider(RemoteConfig config);

    std::string name() const override { return config_.name; }

private:
    std::string do_complete(const CompletionRequest& request) override;

    RemoteConfig config_;
    std::string scheme_host_;  // e.g. http://host:8080
    std::string path_;         // e.g. /v1/chat/completions
};

}  // namespace reqlab::providers
