#include "reqlab/providers/cache.hpp"

#include <filesystem>
#include <fstream>
#include <thread>

#include "reqlab/util/fs.hpp"
#include "reqlab/util/rng.hpp"

namespace reqlab::providers {

namespace fs = std::filesystem;

DiskCache::DiskCache(std::string cache_dir) : dir_(std::move(cache_dir)) {
    fs::create_directories(dir_);
}

std::string DiskCache::path_for(const std::string& key) const {
    return (fs::path(dir_) / key).string();
}

std::optional<std::string> DiskCache::get(const std::string& key) const {
    const std::string path = path_for(key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void DiskCache::put(const std::string& key, const std::string& value) {
    std::lock_guard<std::mutex> lock(mutex_);
    const std::string path = path_for(key);
    if (fs::exists(path)) return;  // at most one write per key
    util::write_file_atomic(path, value);
}

CachedProvider::CachedProvider(std::shared_ptr<Provider> inner,
                               std::shared_ptr<DiskCache> cache,
                               std::shared_ptr<BudgetMeter> budget,
                               RetryPolicy retry)
    : inner_(std::move(inner)),
      cache_(std::move(cache)),
      budget_(std::move(budget)),
      retry_(retry) {}

std::string CachedProvider::cache_key(const CompletionRequest& request) const {
    std::uint64_t a = util::kFnvOffset;
    a = util::fnv1a64_chain(a, inner_->name());
    a = util::fnv1a64_chain(a, request.model_id);
    a = util::fnv1a64_chain(a, request.system_prompt);
    a = util::fnv1a64_chain(a, request.user_input);
    a = util::fnv1a64_chain(a, params_digest_text(request.params));
    const std::string salt = inner_->cache_salt(request);
    if (!salt.empty()) a = util::fnv1a64_chain(a, salt);
    // second lane with a different offset to get a 128-bit key
    std::uint64_t b = util::fnv1a64_chain(a ^ 0x9e3779b97f4a7c15ULL, request.user_input);
    return util::to_hex(a) + util::to_hex(b);
}

std::string CachedProvider::do_complete(const CompletionRequest& request) {
    std::string key;
    if (cache_) {
        key = cache_key(request);
        if (auto hit = cache_->get(key)) {
            return *hit;
        }
    }
    if (budget_) budget_->charge();

    int attempt = 0;
    for (;;) {
        try {
            std::string output = inner_->complete(request);
            if (cache_) cache_->put(key, output);
            return output;
        } catch (const TransportError&) {
            ++attempt;
            if (attempt >= retry_.max_attempts) throw;
            std::this_thread::sleep_for(retry_.base_delay * (1 << (attempt - 1)));
        }
    }
}

}  // namespace reqlab::providers
