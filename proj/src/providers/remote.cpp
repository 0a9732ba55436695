#include "reqlab/providers/remote.hpp"

#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace reqlab::providers {

using nlohmann::json;

namespace {

// Splits a URL into scheme://host[:port] and path.
std::pair<std::string, std::string> split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("endpoint must be a full URL: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {url, "/"};
    }
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

RemoteProvider::RemoteProvider(RemoteConfig config) : config_(std::move(config)) {
    std::tie(scheme_host_, path_) = split_url(config_.endpoint);
}

std::string RemoteProvider::do_complete(const CompletionRequest& request) {
    json body;
    body["model"] = request.model_id;
    body["messages"] = json::array({
        json{{"role", "system"}, {"content", request.system_prompt}},
        json{{"role", "user"}, {"content", request.user_input}},
    });
    body["temperature"] = request.params.temperature;
    body["max_tokens"] = request.params.max_output;
    if (request.params.seed) body["seed"] = *request.params.seed;

    httplib::Client client(scheme_host_);
    client.set_connection_timeout(config_.timeout_seconds);
    client.set_read_timeout(config_.timeout_seconds);

    httplib::Headers headers;
    for (const auto& [header, env_var] : config_.headers_env) {
        const char* value = std::getenv(env_var.c_str());
        if (!value) {
            throw ConfigError("environment variable not set: " + env_var);
        }
        headers.emplace(header, value);
    }

    auto result = client.Post(path_, headers, body.dump(), "application/json");
    if (!result) {
        throw TransportError("provider " + config_.name + ": " +
                             httplib::to_string(result.error()));
    }
    if (result->status >= 500) {
        throw TransportError("provider " + config_.name + ": HTTP " +
                             std::to_string(result->status));
    }
    if (result->status != 200) {
        throw ParseError("provider " + config_.name + ": HTTP " +
                         std::to_string(result->status) + ": " + result->body);
    }

    try {
        json response = json::parse(result->body);
        return response.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw ParseError("malformed provider response from " + config_.name + ": " +
                         e.what());
    }
}

}  // namespace reqlab::providers
