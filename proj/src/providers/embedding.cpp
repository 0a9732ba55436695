#include "reqlab/providers/embedding.hpp"

#include <cmath>
#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "reqlab/util/rng.hpp"

namespace reqlab::providers {

using nlohmann::json;

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw ConfigError("cosine_similarity: dimension mismatch");
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        throw ConfigError("cosine_similarity: zero vector");
    }
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<double> OfflineHashEmbedder::embed(const std::string& text) {
    std::vector<double> v(kDimension, 0.0);
    if (text.empty()) return v;

    const std::string padded = std::string("\x02") + text + "\x03";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) {
        const std::uint64_t h = util::fnv1a64(std::string_view(padded).substr(i, 3));
        const std::size_t bucket = static_cast<std::size_t>((h >> 8) % kDimension);
        const double sign = (h & 1) ? 1.0 : -1.0;
        v[bucket] += sign;
    }

    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
        for (double& x : v) x /= norm;
    }
    return v;
}

RemoteEmbedder::RemoteEmbedder(RemoteEmbedderConfig config) : config_(std::move(config)) {}

std::vector<double> RemoteEmbedder::embed(const std::string& text) {
    const auto scheme_end = config_.endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("endpoint must be a full URL: " + config_.endpoint);
    }
    const auto path_start = config_.endpoint.find('/', scheme_end + 3);
    const std::string host = path_start == std::string::npos
                                 ? config_.endpoint
                                 : config_.endpoint.substr(0, path_start);
    const std::string path =
        path_start == std::string::npos ? "/" : config_.endpoint.substr(path_start);

    httplib::Client client(host);
    client.set_connection_timeout(config_.timeout_seconds);
    client.set_read_timeout(config_.timeout_seconds);

    httplib::Headers headers;
    for (const auto& [header, env_var] : config_.headers_env) {
        const char* value = std::getenv(env_var.c_str());
        if (!value) throw ConfigError("environment variable not set: " + env_var);
        headers.emplace(header, value);
    }

    json body{{"model", config_.model_id}, {"input", text}};
    auto result = client.Post(path, headers, body.dump(), "application/json");
    if (!result || result->status >= 500) {
        throw TransportError("embedder " + config_.name + " transport failure");
    }
    try {
        json response = json::parse(result->body);
        auto vec = response.at("data").at(0).at("embedding").get<std::vector<double>>();
        if (dimension_ == 0) dimension_ = vec.size();
        if (vec.size() != dimension_) {
            throw ParseError("embedder " + config_.name + " returned inconsistent dimension");
        }
        return vec;
    } catch (const json::exception& e) {
        throw ParseError("malformed embedding response from " + config_.name + ": " +
                         e.what());
    }
}

}  // namespace reqlab::providers
