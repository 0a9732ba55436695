#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "reqlab/core/types.hpp"

namespace reqlab::harness {

/// In-memory run store keyed (model, prompt, example), one writer / many
/// readers. Persists as JSONL, one file per (model, prompt) slice under
/// <dir>/<model>/<prompt>.jsonl; each file starts with a meta line
/// carrying the config digest so artifacts are traceable to their inputs.
class RunStore {
public:
    using Key = std::tuple<std::string, std::string, std::string>;

    bool contains(const std::string& model_id, const std::string& prompt_id,
                  const std::string& example_id) const;
    const core::RunRecord* find(const std::string& model_id, const std::string& prompt_id,
                                const std::string& example_id) const;

    /// Throws IntegrityError when the (model, prompt, example) key exists.
    void insert(core::RunRecord record);

    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    /// Records in sorted key order (scheduling-independent).
    std::vector<const core::RunRecord*> records() const;

    void save_dir(const std::string& dir, const std::string& config_digest) const;
    static RunStore load_dir(const std::string& dir);

private:
    std::map<Key, core::RunRecord> records_;
};

/// Verdict store keyed (model, prompt, example, requirement). The
/// applicable=false => satisfied=true convention is enforced at write
/// time, so an inconsistent verdict can never be persisted.
class VerdictStore {
public:
    bool contains(const core::VerdictKey& key) const;
    const core::VerdictRecord* find(const core::VerdictKey& key) const;

    /// Throws IntegrityError on duplicate key or convention violation.
    void insert(core::VerdictRecord record);

    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    std::vector<core::VerdictRecord> records() const;

    void save_dir(const std::string& dir, const std::string& config_digest) const;
    static VerdictStore load_dir(const std::string& dir);

private:
    std::map<core::VerdictKey, core::VerdictRecord> records_;
};

}  // namespace reqlab::harness
