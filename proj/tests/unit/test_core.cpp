#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "reqlab/core/registry.hpp"
#include "reqlab/core/split.hpp"
#include "reqlab/errors.hpp"
#include "reqlab/util/fs.hpp"
#include "reqlab/validators/programmatic.hpp"

using namespace reqlab;

TEST_CASE("registry round-trips through save/load unchanged") {
    const auto dir = test_helpers::scratch_dir("registry_roundtrip");
    const core::Registry registry = test_helpers::make_registry(20);
    core::save_registry(registry, dir + "/registry.json");
    const core::Registry loaded = core::load_registry(dir + "/registry.json");
    CHECK(loaded == registry);
}

TEST_CASE("load_registry validates a 20-requirement file") {
    const auto dir = test_helpers::scratch_dir("registry_20");
    core::save_registry(test_helpers::make_registry(20), dir + "/registry.json");
    const auto registry =
        core::load_registry(dir + "/registry.json", validators::is_known_validator);
    CHECK(registry.size() == 20);
}

TEST_CASE("empty requirement array is a valid registry") {
    const auto registry = core::registry_from_json_text(
        R"({"task": {"id": "t", "description": "d"}, "requirements": []})");
    CHECK(registry.size() == 0);
    CHECK(registry.canonical_order.empty());
}

TEST_CASE("duplicate requirement id is an integrity error naming the id") {
    const std::string text = R"({
      "task": {"id": "t", "description": "d"},
      "requirements": [
        {"id": "r1", "text": "a", "category": "content", "scope": "global",
         "source": "brainstorm", "validator_ref": "manifest"},
        {"id": "r1", "text": "b", "category": "content", "scope": "global",
         "source": "brainstorm", "validator_ref": "manifest"}
      ]})";
    CHECK_THROWS_WITH_AS(core::registry_from_json_text(text),
                         doctest::Contains("r1"), IntegrityError);
}

TEST_CASE("unknown enum value and dangling validator_ref are integrity errors") {
    const std::string bad_enum = R"({
      "task": {"id": "t", "description": "d"},
      "requirements": [
        {"id": "r1", "text": "a", "category": "tone", "scope": "global",
         "source": "brainstorm", "validator_ref": "manifest"}
      ]})";
    CHECK_THROWS_AS(core::registry_from_json_text(bad_enum), IntegrityError);

    const std::string bad_ref = R"({
      "task": {"id": "t", "description": "d"},
      "requirements": [
        {"id": "r1", "text": "a", "category": "content", "scope": "global",
         "source": "brainstorm", "validator_ref": "no-such-validator"}
      ]})";
    CHECK_THROWS_AS(
        core::registry_from_json_text(bad_ref, validators::is_known_validator),
        IntegrityError);
}

TEST_CASE("malformed registry file is a parse error") {
    CHECK_THROWS_AS(core::registry_from_json_text("{not json"), ParseError);
    CHECK_THROWS_AS(core::registry_from_json_text(R"({"requirements": []})"), ParseError);
}

TEST_CASE("canonical_order must be a permutation of the requirement ids") {
    core::Registry registry = test_helpers::make_registry(3);
    registry.canonical_order = {"r01", "r02", "r02"};
    CHECK_THROWS_AS(core::validate_registry(registry), IntegrityError);
    registry.canonical_order = {"r01", "r02"};
    CHECK_THROWS_AS(core::validate_registry(registry), IntegrityError);
    registry.canonical_order = {"r03", "r01", "r02"};
    CHECK_NOTHROW(core::validate_registry(registry));
}

TEST_CASE("dataset round-trip and duplicate example id") {
    const auto dir = test_helpers::scratch_dir("dataset");
    const auto examples = test_helpers::make_examples(5);
    core::save_dataset(examples, dir + "/dataset.json");
    CHECK(core::load_dataset(dir + "/dataset.json") == examples);

    CHECK_THROWS_AS(core::dataset_from_json_text(
                        R"([{"id": "e", "input": "a"}, {"id": "e", "input": "b"}])"),
                    IntegrityError);
}

TEST_CASE("split_dataset: 200 examples at 15/35/50 gives 30/70/100") {
    const auto examples = test_helpers::make_examples(200);
    const auto split = core::split_dataset(examples, {0.15, 0.35, 0.50}, 7);
    CHECK(split.train.size() == 30);
    CHECK(split.validation.size() == 70);
    CHECK(split.test.size() == 100);
}

TEST_CASE("split_dataset: empty input gives three empty lists") {
    const auto split = core::split_dataset({}, {0.15, 0.35, 0.50}, 1);
    CHECK(split.train.empty());
    CHECK(split.validation.empty());
    CHECK(split.test.empty());
}

TEST_CASE("split_dataset: 10 examples at 15/35/50 gives 1/3/6 by the floor rule") {
    const auto split = core::split_dataset(test_helpers::make_examples(10),
                                           {0.15, 0.35, 0.50}, 3);
    CHECK(split.train.size() == 1);
    CHECK(split.validation.size() == 3);
    CHECK(split.test.size() == 6);
}

TEST_CASE("split_dataset is a pure function of (examples, ratios, seed)") {
    const auto examples = test_helpers::make_examples(57);
    const auto a = core::split_dataset(examples, {0.15, 0.35, 0.50}, 99);
    const auto b = core::split_dataset(examples, {0.15, 0.35, 0.50}, 99);
    CHECK(a == b);
    const auto c = core::split_dataset(examples, {0.15, 0.35, 0.50}, 100);
    CHECK(a != c);  // different seed shuffles differently (overwhelmingly)
}

TEST_CASE("split_dataset covers the dataset with pairwise-disjoint parts") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 17ULL, 12345ULL}) {
        const auto examples = test_helpers::make_examples(83);
        const auto split = core::split_dataset(examples, {0.15, 0.35, 0.50}, seed);
        std::set<std::string> all;
        all.insert(split.train.begin(), split.train.end());
        all.insert(split.validation.begin(), split.validation.end());
        all.insert(split.test.begin(), split.test.end());
        CHECK(all.size() ==
              split.train.size() + split.validation.size() + split.test.size());
        CHECK(all.size() == examples.size());
    }
}

TEST_CASE("split_dataset rejects bad ratios") {
    const auto examples = test_helpers::make_examples(4);
    CHECK_THROWS_AS(core::split_dataset(examples, {0.2, 0.2, 0.2}, 0), ConfigError);
    CHECK_THROWS_AS(core::split_dataset(examples, {-0.1, 0.6, 0.5}, 0), ConfigError);
}

TEST_CASE("satisfaction matrix recounts verdicts exactly") {
    core::SatisfactionMatrix matrix;
    std::size_t satisfied = 0;
    for (int i = 0; i < 10; ++i) {
        core::VerdictRecord v;
        v.model_id = "m";
        v.prompt_id = "p";
        v.example_id = "e" + std::to_string(i);
        v.requirement_id = "r";
        v.applicable = true;
        v.satisfied = (i % 3 == 0);
        if (v.satisfied) ++satisfied;
        matrix.add_verdict(v, true);
    }
    const core::Cell* cell = matrix.find({"m", "p", "r"});
    REQUIRE(cell != nullptr);
    CHECK(cell->n == 10);
    CHECK(cell->n_satisfied == satisfied);
    CHECK(cell->specified);
    CHECK(cell->accuracy() == doctest::Approx(static_cast<double>(satisfied) / 10.0));
}
