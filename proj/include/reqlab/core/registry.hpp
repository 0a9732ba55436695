#pragma once

#include <functional>
#include <string>
#include <vector>

#include "reqlab/core/types.hpp"

namespace reqlab::core {

/// A validated requirement registry: the task, its requirements, and the
/// pinned canonical ordering that defines optimizer bitvector positions.
/// Immutable after load; safe for unrestricted concurrent reads.
struct Registry {
    TaskSpec task;
    std::vector<Requirement> requirements;   // file order
    std::vector<std::string> canonical_order;  // permutation of requirement ids

    const Requirement& get(const std::string& id) const;
    const Requirement* find(const std::string& id) const;
    bool contains(const std::string& id) const;
    std::size_t size() const { return requirements.size(); }

    /// Position of `id` in canonical_order (bitvector index).
    std::size_t canonical_index(const std::string& id) const;

    bool operator==(const Registry&) const = default;
};

/// Validator-name resolver used while validating a registry. Returns true
/// when `validator_ref` names a validator that exists.
using ValidatorResolver = std::function<bool(const std::string&)>;

/// Checks every registry invariant: unique non-empty ids, non-empty texts,
/// canonical_order a permutation of the requirement ids, and (when a
/// resolver is given) every validator_ref resolvable.
/// Throws IntegrityError naming the first offender.
void validate_registry(const Registry& registry,
                       const ValidatorResolver& resolver = nullptr);

/// Loads and validates a registry file:
///   {"task": {...}, "requirements": [...], "canonical_order": [id, ...]}
/// canonical_order may be omitted, in which case the requirement file
/// order becomes the pinned canonical ordering.
/// Throws ParseError on malformed files and IntegrityError on invariant
/// violations.
Registry load_registry(const std::string& path,
                       const ValidatorResolver& resolver = nullptr);

Registry registry_from_json_text(const std::string& text,
                                 const ValidatorResolver& resolver = nullptr);

void save_registry(const Registry& registry, const std::string& path);
std::string registry_to_json_text(const Registry& registry);

/// Loads a dataset file: a JSON array of {"id", "input", "metadata"?}.
/// Throws ParseError / IntegrityError (duplicate example id).
std::vector<Example> load_dataset(const std::string& path);
std::vector<Example> dataset_from_json_text(const std::string& text);
void save_dataset(const std::vector<Example>& examples, const std::string& path);

}  // namespace reqlab::core
