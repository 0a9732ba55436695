#include "reqlab/composer/composer.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "reqlab/errors.hpp"
#include "reqlab/util/rng.hpp"

namespace reqlab::composer {

std::string render_prompt(const core::TaskSpec& task,
                          const std::vector<core::Requirement>& requirements) {
    if (requirements.empty()) {
        return task.description;
    }
    std::ostringstream out;
    out << task.description << "\n\nFollow the guideline below:";
    for (const auto& r : requirements) {
        out << "\n- " << r.text;
    }
    return out.str();
}

std::vector<std::string> shuffle_order(const std::vector<std::string>& requirement_ids,
                                       std::uint64_t seed) {
    std::set<std::string> unique(requirement_ids.begin(), requirement_ids.end());
    if (unique.size() != requirement_ids.size()) {
        throw IntegrityError("shuffle_order: duplicate requirement ids");
    }
    std::vector<std::string> order = requirement_ids;
    util::shuffle(order, seed);
    return order;
}

namespace {

std::string prompt_index_id(std::size_t i, std::size_t n) {
    std::size_t width = 1;
    for (std::size_t v = n > 0 ? n - 1 : 0; v >= 10; v /= 10) ++width;
    std::string digits = std::to_string(i);
    return "p" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

CyclicDesign cyclic_design(const core::TaskSpec& task,
                           const core::Registry& registry,
                           const std::vector<std::string>& order,
                           std::size_t k) {
    const std::size_t n = order.size();
    if (n == 0 || k < 1 || k > n) {
        throw ConfigError("cyclic_design: window k must satisfy 1 <= k <= N");
    }
    CyclicDesign design;
    design.requirement_order = order;
    design.window_k = k;
    for (std::size_t i = 0; i < n; ++i) {
        core::PromptSpec spec;
        spec.id = prompt_index_id(i, n);
        spec.task_id = task.id;
        std::vector<core::Requirement> reqs;
        for (std::size_t j = 0; j < k; ++j) {
            const std::string& id = order[(i + j) % n];
            spec.requirement_ids.push_back(id);
            reqs.push_back(registry.get(id));
        }
        spec.rendered = render_prompt(task, reqs);
        design.prompts.push_back(std::move(spec));
    }
    return design;
}

core::PromptSpec subset_prompt(const core::TaskSpec& task,
                               const core::Registry& registry,
                               const std::vector<std::uint8_t>& bits) {
    if (bits.size() != registry.size()) {
        throw ConfigError("subset_prompt: bitvector length does not match registry size");
    }
    core::PromptSpec spec;
    spec.task_id = task.id;
    std::string bit_string(bits.size(), '0');
    std::vector<core::Requirement> reqs;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) {
            bit_string[i] = '1';
            const std::string& id = registry.canonical_order[i];
            spec.requirement_ids.push_back(id);
            reqs.push_back(registry.get(id));
        }
    }
    spec.id = "subset-" + bit_string;
    spec.rendered = render_prompt(task, reqs);
    return spec;
}

std::size_t count_tokens(const std::string& text) {
    std::size_t count = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

}  // namespace reqlab::composer
