#include "reqlab/harness/run_store.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reqlab/errors.hpp"
#include "reqlab/util/fs.hpp"

namespace reqlab::harness {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json meta_line(const std::string& config_digest) {
    return json{{"type", "meta"}, {"config_digest", config_digest}};
}

void for_each_jsonl(const std::string& dir,
                    const std::function<void(const json&)>& on_record) {
    if (!fs::exists(dir)) return;
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        std::ifstream in(file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::exception& e) {
                throw ParseError("malformed JSONL line in " + file.string() + ": " +
                                 e.what());
            }
            if (j.value("type", "") == "meta") continue;
            on_record(j);
        }
    }
}

}  // namespace

bool RunStore::contains(const std::string& model_id, const std::string& prompt_id,
                        const std::string& example_id) const {
    return records_.count({model_id, prompt_id, example_id}) > 0;
}

const core::RunRecord* RunStore::find(const std::string& model_id,
                                      const std::string& prompt_id,
                                      const std::string& example_id) const {
    auto it = records_.find({model_id, prompt_id, example_id});
    return it == records_.end() ? nullptr : &it->second;
}

void RunStore::insert(core::RunRecord record) {
    Key key{record.model_id, record.prompt_id, record.example_id};
    if (records_.count(key)) {
        throw IntegrityError("duplicate run record: " + record.model_id + "/" +
                             record.prompt_id + "/" + record.example_id);
    }
    records_.emplace(std::move(key), std::move(record));
}

std::vector<const core::RunRecord*> RunStore::records() const {
    std::vector<const core::RunRecord*> out;
    out.reserve(records_.size());
    for (const auto& [_, record] : records_) out.push_back(&record);
    return out;
}

void RunStore::save_dir(const std::string& dir, const std::string& config_digest) const {
    // Group by (model, prompt); rewrite each slice sorted so re-saving a
    // store yields identical bytes.
    std::map<std::pair<std::string, std::string>, std::ostringstream> slices;
    for (const auto& [key, record] : records_) {
        auto& out = slices[{record.model_id, record.prompt_id}];
        json j{{"model_id", record.model_id},
               {"prompt_id", record.prompt_id},
               {"example_id", record.example_id},
               {"output", record.output},
               {"provider_fingerprint", record.provider_fingerprint},
               {"created_at_unix", record.created_at_unix}};
        out << j.dump() << "\n";
    }
    for (auto& [slice, body] : slices) {
        const fs::path path = fs::path(dir) / slice.first / (slice.second + ".jsonl");
        util::write_file_atomic(path.string(),
                                meta_line(config_digest).dump() + "\n" + body.str());
    }
}

RunStore RunStore::load_dir(const std::string& dir) {
    RunStore store;
    for_each_jsonl(dir, [&](const json& j) {
        core::RunRecord record;
        record.model_id = j.at("model_id").get<std::string>();
        record.prompt_id = j.at("prompt_id").get<std::string>();
        record.example_id = j.at("example_id").get<std::string>();
        record.output = j.at("output").get<std::string>();
        record.provider_fingerprint = j.value("provider_fingerprint", "");
        record.created_at_unix = j.value("created_at_unix", std::int64_t{0});
        store.insert(std::move(record));
    });
    return store;
}

bool VerdictStore::contains(const core::VerdictKey& key) const {
    return records_.count(key) > 0;
}

const core::VerdictRecord* VerdictStore::find(const core::VerdictKey& key) const {
    auto it = records_.find(key);
    return it == records_.end() ? nullptr : &it->second;
}

void VerdictStore::insert(core::VerdictRecord record) {
    if (!record.applicable && !record.satisfied) {
        throw IntegrityError("verdict with applicable=false must have satisfied=true: " +
                             record.requirement_id);
    }
    core::VerdictKey key = core::key_of(record);
    if (records_.count(key)) {
        throw IntegrityError("duplicate verdict record: " + record.model_id + "/" +
                             record.prompt_id + "/" + record.example_id + "/" +
                             record.requirement_id);
    }
    records_.emplace(std::move(key), std::move(record));
}

std::vector<core::VerdictRecord> VerdictStore::records() const {
    std::vector<core::VerdictRecord> out;
    out.reserve(records_.size());
    for (const auto& [_, record] : records_) out.push_back(record);
    return out;
}

void VerdictStore::save_dir(const std::string& dir, const std::string& config_digest) const {
    std::map<std::pair<std::string, std::string>, std::ostringstream> slices;
    for (const auto& [key, record] : records_) {
        auto& out = slices[{record.model_id, record.prompt_id}];
        json j{{"model_id", record.model_id},
               {"prompt_id", record.prompt_id},
               {"example_id", record.example_id},
               {"requirement_id", record.requirement_id},
               {"applicable", record.applicable},
               {"satisfied", record.satisfied},
               {"rationale", record.rationale}};
        out << j.dump() << "\n";
    }
    for (auto& [slice, body] : slices) {
        const fs::path path = fs::path(dir) / slice.first / (slice.second + ".jsonl");
        util::write_file_atomic(path.string(),
                                meta_line(config_digest).dump() + "\n" + body.str());
    }
}

VerdictStore VerdictStore::load_dir(const std::string& dir) {
    VerdictStore store;
    for_each_jsonl(dir, [&](const json& j) {
        core::VerdictRecord record;
        record.model_id = j.at("model_id").get<std::string>();
        record.prompt_id = j.at("prompt_id").get<std::string>();
        record.example_id = j.at("example_id").get<std::string>();
        record.requirement_id = j.at("requirement_id").get<std::string>();
        record.applicable = j.at("applicable").get<bool>();
        record.satisfied = j.at("satisfied").get<bool>();
        record.rationale = j.value("rationale", "");
        store.insert(std::move(record));
    });
    return store;
}

}  // namespace reqlab::harness
