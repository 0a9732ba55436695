#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "reqlab/core/registry.hpp"
#include "reqlab/core/types.hpp"
#include "reqlab/providers/simulated.hpp"

namespace test_helpers {

/// Registry of n manifest-validated requirements r01..rNN with varied
/// metadata, canonical order = listing order.
inline reqlab::core::Registry make_registry(std::size_t n,
                                            const std::string& validator_ref = "manifest") {
    using namespace reqlab::core;
    Registry registry;
    registry.task = {"task", "Explain the code snippet.", "dataset.json"};
    const Category categories[] = {Category::content, Category::style, Category::format};
    const Scope scopes[] = {Scope::global, Scope::conditional};
    const Source sources[] = {Source::existing_prompt, Source::brainstorm,
                              Source::error_analysis};
    for (std::size_t i = 0; i < n; ++i) {
        Requirement r;
        const std::string num = (i + 1 < 10 ? "0" : "") + std::to_string(i + 1);
        r.id = "r" + num;
        r.text = "The output should satisfy behavioral constraint number " + num + ".";
        r.category = categories[i % 3];
        r.scope = scopes[i % 2];
        r.source = sources[i % 3];
        r.validator_ref = validator_ref;
        registry.requirements.push_back(std::move(r));
        registry.canonical_order.push_back("r" + num);
    }
    return registry;
}

inline std::vector<reqlab::core::Example> make_examples(std::size_t n) {
    std::vector<reqlab::core::Example> examples;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string num = std::to_string(i);
        examples.push_back({"ex" + num, "input payload " + num, {}});
    }
    return examples;
}

/// Uniform profile: every requirement at (p_specified, p_unspecified).
inline reqlab::providers::SatisfactionProfile make_profile(
    const reqlab::core::Registry& registry, double p_specified, double p_unspecified,
    reqlab::providers::InterferenceMode mode = reqlab::providers::InterferenceMode::none,
    double rate = 0.0) {
    reqlab::providers::SatisfactionProfile profile;
    for (const auto& r : registry.requirements) {
        profile.requirements[r.id] = {p_specified, p_unspecified};
    }
    profile.mode = mode;
    profile.rate = rate;
    return profile;
}

/// Unique scratch directory under the build tree.
inline std::string scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("reqlab_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace test_helpers
