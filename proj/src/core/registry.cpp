#include "reqlab/core/registry.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "reqlab/errors.hpp"
#include "reqlab/util/fs.hpp"

namespace reqlab::core {

using nlohmann::json;

std::string to_string(Category c) {
    switch (c) {
        case Category::content: return "content";
        case Category::style: return "style";
        case Category::format: return "format";
    }
    return "content";
}

std::string to_string(Scope s) {
    return s == Scope::global ? "global" : "conditional";
}

std::string to_string(Source s) {
    switch (s) {
        case Source::existing_prompt: return "existing-prompt";
        case Source::brainstorm: return "brainstorm";
        case Source::error_analysis: return "error-analysis";
    }
    return "brainstorm";
}

Category category_from_string(const std::string& s) {
    if (s == "content") return Category::content;
    if (s == "style") return Category::style;
    if (s == "format") return Category::format;
    throw IntegrityError("unknown category: " + s);
}

Scope scope_from_string(const std::string& s) {
    if (s == "global") return Scope::global;
    if (s == "conditional") return Scope::conditional;
    throw IntegrityError("unknown scope: " + s);
}

Source source_from_string(const std::string& s) {
    if (s == "existing-prompt") return Source::existing_prompt;
    if (s == "brainstorm") return Source::brainstorm;
    if (s == "error-analysis") return Source::error_analysis;
    throw IntegrityError("unknown source: " + s);
}

const Requirement* Registry::find(const std::string& id) const {
    for (const auto& r : requirements) {
        if (r.id == id) return &r;
    }
    return nullptr;
}

const Requirement& Registry::get(const std::string& id) const {
    const Requirement* r = find(id);
    if (!r) throw IntegrityError("unknown requirement id: " + id);
    return *r;
}

bool Registry::contains(const std::string& id) const { return find(id) != nullptr; }

std::size_t Registry::canonical_index(const std::string& id) const {
    auto it = std::find(canonical_order.begin(), canonical_order.end(), id);
    if (it == canonical_order.end()) {
        throw IntegrityError("id not in canonical order: " + id);
    }
    return static_cast<std::size_t>(it - canonical_order.begin());
}

void validate_registry(const Registry& registry, const ValidatorResolver& resolver) {
    if (registry.task.description.empty()) {
        throw IntegrityError("task description must be non-empty");
    }
    std::set<std::string> ids;
    for (const auto& r : registry.requirements) {
        if (r.id.empty()) {
            throw IntegrityError("requirement with empty id");
        }
        if (!ids.insert(r.id).second) {
            throw IntegrityError("duplicate requirement id: " + r.id);
        }
        if (r.text.empty()) {
            throw IntegrityError("requirement " + r.id + " has empty text");
        }
        if (resolver && !resolver(r.validator_ref)) {
            throw IntegrityError("requirement " + r.id +
                                 " references unknown validator: " + r.validator_ref);
        }
    }
    if (registry.canonical_order.size() != registry.requirements.size()) {
        throw IntegrityError("canonical_order size does not match requirement count");
    }
    std::set<std::string> order_ids(registry.canonical_order.begin(),
                                    registry.canonical_order.end());
    if (order_ids != ids) {
        throw IntegrityError("canonical_order is not a permutation of requirement ids");
    }
}

namespace {

Requirement requirement_from_json(const json& j) {
    Requirement r;
    r.id = j.at("id").get<std::string>();
    r.text = j.at("text").get<std::string>();
    r.category = category_from_string(j.at("category").get<std::string>());
    r.scope = scope_from_string(j.at("scope").get<std::string>());
    r.source = source_from_string(j.at("source").get<std::string>());
    r.validator_ref = j.at("validator_ref").get<std::string>();
    return r;
}

json requirement_to_json(const Requirement& r) {
    return json{{"id", r.id},
                {"text", r.text},
                {"category", to_string(r.category)},
                {"scope", to_string(r.scope)},
                {"source", to_string(r.source)},
                {"validator_ref", r.validator_ref}};
}

}  // namespace

Registry registry_from_json_text(const std::string& text, const ValidatorResolver& resolver) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed registry file: ") + e.what());
    }
    Registry reg;
    try {
        const json& t = j.at("task");
        reg.task.id = t.at("id").get<std::string>();
        reg.task.description = t.at("description").get<std::string>();
        reg.task.dataset_ref = t.value("dataset_ref", "");
        for (const json& rj : j.at("requirements")) {
            reg.requirements.push_back(requirement_from_json(rj));
        }
        if (j.contains("canonical_order")) {
            reg.canonical_order = j.at("canonical_order").get<std::vector<std::string>>();
        } else {
            for (const auto& r : reg.requirements) reg.canonical_order.push_back(r.id);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed registry file: ") + e.what());
    }
    validate_registry(reg, resolver);
    return reg;
}

Registry load_registry(const std::string& path, const ValidatorResolver& resolver) {
    return registry_from_json_text(util::read_file(path), resolver);
}

std::string registry_to_json_text(const Registry& registry) {
    json j;
    j["task"] = json{{"id", registry.task.id},
                     {"description", registry.task.description},
                     {"dataset_ref", registry.task.dataset_ref}};
    j["requirements"] = json::array();
    for (const auto& r : registry.requirements) {
        j["requirements"].push_back(requirement_to_json(r));
    }
    j["canonical_order"] = registry.canonical_order;
    return j.dump(2) + "\n";
}

void save_registry(const Registry& registry, const std::string& path) {
    util::write_file(path, registry_to_json_text(registry));
}

std::vector<Example> dataset_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed dataset file: ") + e.what());
    }
    if (!j.is_array()) {
        throw ParseError("dataset file must be a JSON array of examples");
    }
    std::vector<Example> examples;
    std::set<std::string> ids;
    for (const json& ej : j) {
        Example e;
        try {
            e.id = ej.at("id").get<std::string>();
            e.input = ej.at("input").get<std::string>();
            if (ej.contains("metadata")) {
                e.metadata = ej.at("metadata").get<std::map<std::string, std::string>>();
            }
        } catch (const json::exception& ex) {
            throw ParseError(std::string("malformed example: ") + ex.what());
        }
        if (!ids.insert(e.id).second) {
            throw IntegrityError("duplicate example id: " + e.id);
        }
        examples.push_back(std::move(e));
    }
    return examples;
}

std::vector<Example> load_dataset(const std::string& path) {
    return dataset_from_json_text(util::read_file(path));
}

void save_dataset(const std::vector<Example>& examples, const std::string& path) {
    json j = json::array();
    for (const auto& e : examples) {
        json ej{{"id", e.id}, {"input", e.input}};
        if (!e.metadata.empty()) ej["metadata"] = e.metadata;
        j.push_back(ej);
    }
    util::write_file(path, j.dump(2) + "\n");
}

}  // namespace reqlab::core
