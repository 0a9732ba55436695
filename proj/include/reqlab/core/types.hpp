#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reqlab::core {

// ---------------------------------------------------------------------------
// Requirement metadata enums. Closed sets; parsing anything else is an
// integrity error.
// ---------------------------------------------------------------------------

enum class Category { content, style, format };
enum class Scope { global, conditional };
enum class Source { existing_prompt, brainstorm, error_analysis };

std::string to_string(Category c);
std::string to_string(Scope s);
std::string to_string(Source s);
Category category_from_string(const std::string& s);
Scope scope_from_string(const std::string& s);
Source source_from_string(const std::string& s);

// ---------------------------------------------------------------------------
// Domain records
// ---------------------------------------------------------------------------

/// One atomic natural-language behavioral constraint.
struct Requirement {
    std::string id;             // stable caller-supplied slug
    std::string text;
    Category category = Category::content;
    Scope scope = Scope::global;
    Source source = Source::brainstorm;
    std::string validator_ref;  // name of a registered validator

    bool operator==(const Requirement&) const = default;
};

struct TaskSpec {
    std::string id;
    std::string description;  // one-line task instruction
    std::string dataset_ref;

    bool operator==(const TaskSpec&) const = default;
};

struct Example {
    std::string id;
    std::string input;
    std::map<std::string, std::string> metadata;

    bool operator==(const Example&) const = default;
};

struct DatasetSplit {
    std::vector<std::string> train;
    std::vector<std::string> validation;
    std::vector<std::string> test;

    bool operator==(const DatasetSplit&) const = default;
};

/// A task description plus an ordered subset of requirement ids, rendered
/// to prompt text by the composer. `rendered` is always the exact composer
/// output, never hand-edited.
struct PromptSpec {
    std::string id;
    std::string task_id;
    std::vector<std::string> requirement_ids;  // ordered, distinct
    std::string rendered;

    bool operator==(const PromptSpec&) const = default;
};

/// One model output per (model, prompt, example). created_at_unix is
/// informational only and excluded from equality.
struct RunRecord {
    std::string model_id;
    std::string prompt_id;
    std::string example_id;
    std::string output;
    std::string provider_fingerprint;  // provider name + params digest
    std::int64_t created_at_unix = 0;

    bool same_content(const RunRecord& o) const {
        return model_id == o.model_id && prompt_id == o.prompt_id &&
               example_id == o.example_id && output == o.output &&
               provider_fingerprint == o.provider_fingerprint;
    }
};

/// One boolean satisfaction judgment per (run, requirement).
/// Convention: applicable=false implies satisfied=true.
struct VerdictRecord {
    std::string model_id;
    std::string prompt_id;
    std::string example_id;
    std::string requirement_id;
    bool applicable = true;
    bool satisfied = false;
    std::string rationale;
};

/// Key of a VerdictRecord; also used as the audit-sample handle.
struct VerdictKey {
    std::string model_id;
    std::string prompt_id;
    std::string example_id;
    std::string requirement_id;

    auto operator<=>(const VerdictKey&) const = default;
};

inline VerdictKey key_of(const VerdictRecord& v) {
    return {v.model_id, v.prompt_id, v.example_id, v.requirement_id};
}

// ---------------------------------------------------------------------------
// SatisfactionMatrix: aggregated counts per (model, prompt, requirement).
// ---------------------------------------------------------------------------

struct CellKey {
    std::string model_id;
    std::string prompt_id;
    std::string requirement_id;

    auto operator<=>(const CellKey&) const = default;
};

struct Cell {
    std::uint64_t n = 0;
    std::uint64_t n_satisfied = 0;
    bool specified = false;

    double accuracy() const {
        return n == 0 ? 0.0 : static_cast<double>(n_satisfied) / static_cast<double>(n);
    }

    bool operator==(const Cell&) const = default;
};

/// The substrate of every statistic in the harness: exact recounts of
/// verdicts keyed (model, prompt, requirement), with a specified flag per
/// cell. Iteration order is the sorted key order, so downstream output is
/// deterministic.
class SatisfactionMatrix {
public:
    using Cells = std::map<CellKey, Cell>;

    void add_verdict(const VerdictRecord& verdict, bool specified);
    void set_cell(const CellKey& key, const Cell& cell) { cells_[key] = cell; }

    const Cell* find(const CellKey& key) const;
    const Cells& cells() const { return cells_; }
    bool empty() const { return cells_.empty(); }

    std::vector<std::string> model_ids() const;
    std::vector<std::string> prompt_ids(const std::string& model_id) const;
    std::vector<std::string> requirement_ids(const std::string& model_id) const;

    bool operator==(const SatisfactionMatrix&) const = default;

private:
    Cells cells_;
};

}  // namespace reqlab::core
