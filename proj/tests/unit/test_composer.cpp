#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "reqlab/composer/composer.hpp"
#include "reqlab/errors.hpp"

using namespace reqlab;

namespace {

core::Requirement req(const std::string& id, const std::string& text) {
    core::Requirement r;
    r.id = id;
    r.text = text;
    r.validator_ref = "manifest";
    return r;
}

/// Independent token recount: split into lines, count whitespace-separated
/// words per line with stream extraction.
std::size_t recount_tokens_by_line(const std::string& text) {
    std::size_t total = 0;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream words(line);
        std::string word;
        while (words >> word) ++total;
    }
    return total;
}

}  // namespace

TEST_CASE("render_prompt matches the template byte for byte") {
    core::TaskSpec task{"t", "Explain the code snippet.", ""};
    const auto r1 = req("r1", "Do not use Markdown syntax.");
    const auto r2 = req("r2", "Keep the output under 500 words.");
    CHECK(composer::render_prompt(task, {r1, r2}) ==
          "Explain the code snippet.\n\nFollow the guideline below:\n"
          "- Do not use Markdown syntax.\n- Keep the output under 500 words.");
}

TEST_CASE("render_prompt with no requirements is the bare description") {
    core::TaskSpec task{"t", "Explain the code snippet.", ""};
    CHECK(composer::render_prompt(task, {}) == "Explain the code snippet.");
}

TEST_CASE("reordering requirements swaps only the bullet order") {
    core::TaskSpec task{"t", "desc", ""};
    const auto r1 = req("r1", "alpha");
    const auto r2 = req("r2", "beta");
    const std::string forward = composer::render_prompt(task, {r1, r2});
    const std::string backward = composer::render_prompt(task, {r2, r1});
    CHECK(forward == "desc\n\nFollow the guideline below:\n- alpha\n- beta");
    CHECK(backward == "desc\n\nFollow the guideline below:\n- beta\n- alpha");
}

TEST_CASE("shuffle_order is deterministic and produces valid permutations") {
    std::vector<std::string> ids;
    for (int i = 0; i < 20; ++i) ids.push_back("r" + std::to_string(i));

    const auto a = composer::shuffle_order(ids, 42);
    const auto b = composer::shuffle_order(ids, 42);
    CHECK(a == b);

    const auto c = composer::shuffle_order(ids, 43);
    // permutation-validity oracle: same multiset of ids
    auto sorted_a = a, sorted_c = c, sorted_ids = ids;
    std::sort(sorted_a.begin(), sorted_a.end());
    std::sort(sorted_c.begin(), sorted_c.end());
    std::sort(sorted_ids.begin(), sorted_ids.end());
    CHECK(sorted_a == sorted_ids);
    CHECK(sorted_c == sorted_ids);
    CHECK(a != c);  // 20 ids: collision odds are 1/20!

    CHECK(composer::shuffle_order({"solo"}, 7) == std::vector<std::string>{"solo"});
    CHECK_THROWS_AS(composer::shuffle_order({"x", "x"}, 1), IntegrityError);
}

TEST_CASE("cyclic design: N=20, k=10 specifies every requirement exactly 10 times") {
    const auto registry = test_helpers::make_registry(20);
    const auto design =
        composer::cyclic_design(registry.task, registry, registry.canonical_order, 10);
    REQUIRE(design.prompts.size() == 20);

    std::map<std::string, std::size_t> specified_count;
    for (const auto& prompt : design.prompts) {
        CHECK(prompt.requirement_ids.size() == 10);  // row sums
        for (const auto& id : prompt.requirement_ids) ++specified_count[id];
    }
    for (const auto& id : registry.canonical_order) {
        CHECK(specified_count[id] == 10);  // column sums
    }
}

TEST_CASE("cyclic design windows: N=4, k=2") {
    const auto registry = test_helpers::make_registry(4);
    const auto design =
        composer::cyclic_design(registry.task, registry, registry.canonical_order, 2);
    REQUIRE(design.prompts.size() == 4);
    CHECK(design.prompts[0].requirement_ids == std::vector<std::string>{"r01", "r02"});
    CHECK(design.prompts[1].requirement_ids == std::vector<std::string>{"r02", "r03"});
    CHECK(design.prompts[2].requirement_ids == std::vector<std::string>{"r03", "r04"});
    CHECK(design.prompts[3].requirement_ids == std::vector<std::string>{"r04", "r01"});
}

TEST_CASE("cyclic design with k=N gives the full set in every prompt") {
    const auto registry = test_helpers::make_registry(5);
    const auto design =
        composer::cyclic_design(registry.task, registry, registry.canonical_order, 5);
    for (const auto& prompt : design.prompts) {
        CHECK(prompt.requirement_ids.size() == 5);
        std::set<std::string> ids(prompt.requirement_ids.begin(),
                                  prompt.requirement_ids.end());
        CHECK(ids.size() == 5);
    }
}

TEST_CASE("cyclic design rejects k out of range") {
    const auto registry = test_helpers::make_registry(4);
    CHECK_THROWS_AS(
        composer::cyclic_design(registry.task, registry, registry.canonical_order, 0),
        ConfigError);
    CHECK_THROWS_AS(
        composer::cyclic_design(registry.task, registry, registry.canonical_order, 5),
        ConfigError);
}

TEST_CASE("cyclic design renders prompts through render_prompt") {
    const auto registry = test_helpers::make_registry(3);
    const auto design =
        composer::cyclic_design(registry.task, registry, registry.canonical_order, 1);
    std::vector<core::Requirement> first{registry.get("r01")};
    CHECK(design.prompts[0].rendered == composer::render_prompt(registry.task, first));
}

TEST_CASE("subset_prompt selects bits in canonical order") {
    const auto registry = test_helpers::make_registry(4);

    const core::PromptSpec all_zero =
        composer::subset_prompt(registry.task, registry, {0, 0, 0, 0});
    CHECK(all_zero.requirement_ids.empty());
    CHECK(all_zero.rendered == registry.task.description);

    const core::PromptSpec picked =
        composer::subset_prompt(registry.task, registry, {1, 0, 1, 0});
    CHECK(picked.requirement_ids == std::vector<std::string>{"r01", "r03"});

    CHECK_THROWS_AS(composer::subset_prompt(registry.task, registry, {1, 0}), ConfigError);
}

TEST_CASE("subset_prompt over 19 requirements with all bits set specifies all 19") {
    const auto registry = test_helpers::make_registry(19);
    const core::PromptSpec prompt = composer::subset_prompt(
        registry.task, registry, std::vector<std::uint8_t>(19, 1));
    CHECK(prompt.requirement_ids.size() == 19);
    CHECK(prompt.requirement_ids == registry.canonical_order);
}

TEST_CASE("subset_prompt with a one-hot bitvector yields a single bullet") {
    const auto registry = test_helpers::make_registry(6);
    for (std::size_t j = 0; j < 6; ++j) {
        std::vector<std::uint8_t> bits(6, 0);
        bits[j] = 1;
        const auto prompt = composer::subset_prompt(registry.task, registry, bits);
        REQUIRE(prompt.requirement_ids.size() == 1);
        CHECK(prompt.requirement_ids[0] == registry.canonical_order[j]);
        const std::string expected_bullet =
            "- " + registry.get(registry.canonical_order[j]).text;
        CHECK(prompt.rendered.find(expected_bullet) != std::string::npos);
    }
}

TEST_CASE("count_tokens under the whitespace default") {
    CHECK(composer::count_tokens("") == 0);
    CHECK(composer::count_tokens("a b c") == 3);
    CHECK(composer::count_tokens("  padded   words \n\n here\t") == 3);
}

TEST_CASE("count_tokens of a 19-requirement prompt matches the line-recount oracle") {
    const auto registry = test_helpers::make_registry(19);
    const auto prompt = composer::subset_prompt(registry.task, registry,
                                                std::vector<std::uint8_t>(19, 1));
    CHECK(composer::count_tokens(prompt.rendered) ==
          recount_tokens_by_line(prompt.rendered));
}
