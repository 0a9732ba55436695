#pragma once

#include <map>
#include <string>
#include <vector>

#include "reqlab/errors.hpp"

namespace reqlab::providers {

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::string name() const = 0;
    virtual std::size_t dimension() const = 0;
    virtual std::vector<double> embed(const std::string& text) = 0;
};

/// dot(a,b) / (|a| |b|). Throws ConfigError on dimension mismatch or a
/// zero vector.
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

/// Offline deterministic embedder: feature-hashed character trigrams into
/// 256 signed buckets, L2-normalized. Non-empty texts are padded with
/// sentinel boundary bytes so even one-character inputs produce a nonzero
/// vector; the empty text embeds to the zero vector.
class OfflineHashEmbedder final : public Embedder {
public:
    static constexpr std::size_t kDimension = 256;

    std::string name() const override { return "offline-embed"; }
    std::size_t dimension() const override { return kDimension; }
    std::vector<double> embed(const std::string& text) override;
};

/// Generic HTTP+JSON embedding backend:
///   request  {"model", "input"}
///   response {"data":[{"embedding":[...]}]}
struct RemoteEmbedderConfig {
    std::string name = "remote-embed";
    std::string endpoint;
    std::string model_id;
    std::map<std::string, std::string> headers_env;
    int timeout_seconds = 60;
};

class RemoteEmbedder final : public Embedder {
public:
    explicit RemoteEmbedder(RemoteEmbedderConfig config);

    std::string name() const override { return config_.name; }
    std::size_t dimension() const override { return dimension_; }
    std::vector<double> embed(const std::string& text) override;

private:
    RemoteEmbedderConfig config_;
    std::size_t dimension_ = 0;  // learned from the first response
};

}  // namespace reqlab::providers
