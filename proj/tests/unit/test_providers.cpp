#include <doctest.h>

#include <atomic>
#include <cmath>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "reqlab/providers/cache.hpp"
#include "reqlab/providers/embedding.hpp"
#include "reqlab/providers/factory.hpp"
#include "reqlab/providers/remote.hpp"
#include "reqlab/providers/scripted.hpp"
#include "reqlab/providers/simulated.hpp"
#include "reqlab/validators/programmatic.hpp"

using namespace reqlab;
using namespace reqlab::providers;

namespace {

CompletionRequest make_request(const std::string& prompt_id = "p0",
                               const std::string& example_id = "e0") {
    CompletionRequest request;
    request.model_id = "model-a";
    request.system_prompt = "system";
    request.user_input = "input";
    request.prompt_id = prompt_id;
    request.example_id = example_id;
    return request;
}

/// Counts the calls that reach it; used for cache/budget contracts.
class CountingProvider final : public Provider {
public:
    std::string name() const override { return "counting"; }
    std::atomic<int> calls{0};
    int fail_first_n = 0;  // raise TransportError for the first n calls

private:
    std::string do_complete(const CompletionRequest& request) override {
        const int call = ++calls;
        if (call <= fail_first_n) throw TransportError("synthetic transport failure");
        return "output for " + request.user_input;
    }
};

}  // namespace

TEST_CASE("cached request repeated returns identical bytes with zero extra calls") {
    const auto dir = test_helpers::scratch_dir("cache_hits");
    auto inner = std::make_shared<CountingProvider>();
    CachedProvider cached(inner, std::make_shared<DiskCache>(dir), nullptr);

    const auto request = make_request();
    const std::string first = cached.complete(request);
    const std::string second = cached.complete(request);
    CHECK(first == second);
    CHECK(inner->calls.load() == 1);
}

TEST_CASE("cache key changes when any request field changes") {
    auto inner = std::make_shared<CountingProvider>();
    CachedProvider cached(inner, nullptr, nullptr);

    const auto base = make_request();
    const std::string base_key = cached.cache_key(base);

    auto poke = [&](auto mutate) {
        CompletionRequest r = base;
        mutate(r);
        CHECK(cached.cache_key(r) != base_key);
    };
    poke([](CompletionRequest& r) { r.model_id = "model-b"; });
    poke([](CompletionRequest& r) { r.system_prompt = "other"; });
    poke([](CompletionRequest& r) { r.user_input = "other"; });
    poke([](CompletionRequest& r) { r.params.temperature = 0.7; });
    poke([](CompletionRequest& r) { r.params.max_output = 7; });
    poke([](CompletionRequest& r) { r.params.seed = 5; });
}

TEST_CASE("budget cap: the 11th distinct call exceeds a cap of 10") {
    auto inner = std::make_shared<CountingProvider>();
    auto budget = std::make_shared<BudgetMeter>(10);
    CachedProvider cached(inner, nullptr, budget);

    for (int i = 0; i < 10; ++i) {
        auto request = make_request();
        request.user_input = "distinct " + std::to_string(i);
        CHECK_NOTHROW(cached.complete(request));
    }
    auto over = make_request();
    over.user_input = "one too many";
    CHECK_THROWS_AS(cached.complete(over), BudgetExceededError);
    CHECK(budget->used() == 10);
}

TEST_CASE("cache hits do not consume budget") {
    const auto dir = test_helpers::scratch_dir("cache_budget");
    auto inner = std::make_shared<CountingProvider>();
    auto budget = std::make_shared<BudgetMeter>(1);
    CachedProvider cached(inner, std::make_shared<DiskCache>(dir), budget);

    const auto request = make_request();
    CHECK_NOTHROW(cached.complete(request));
    CHECK_NOTHROW(cached.complete(request));  // hit; would exceed the cap otherwise
    CHECK(budget->used() == 1);
}

TEST_CASE("transport errors are retried with backoff, then surfaced") {
    auto flaky = std::make_shared<CountingProvider>();
    flaky->fail_first_n = 2;
    CachedProvider wrapped(flaky, nullptr, nullptr,
                           RetryPolicy{3, std::chrono::milliseconds(1)});
    CHECK(wrapped.complete(make_request()) == "output for input");
    CHECK(flaky->calls.load() == 3);

    auto dead = std::make_shared<CountingProvider>();
    dead->fail_first_n = 1000;
    CachedProvider dead_wrapped(dead, nullptr, nullptr,
                                RetryPolicy{3, std::chrono::milliseconds(1)});
    CHECK_THROWS_AS(dead_wrapped.complete(make_request()), TransportError);
    CHECK(dead->calls.load() == 3);
}

TEST_CASE("simulated provider is deterministic without a cache") {
    const auto registry = test_helpers::make_registry(5);
    const auto profile = test_helpers::make_profile(registry, 0.7, 0.4);
    SimulatedProvider provider(profile, 42);

    auto request = make_request();
    request.specified_ids = {"r01", "r02"};
    CHECK(provider.complete(request) == provider.complete(request));
}

TEST_CASE("simulate with all probabilities 1 lists every requirement") {
    const auto registry = test_helpers::make_registry(4);
    const auto profile = test_helpers::make_profile(registry, 1.0, 1.0);
    const std::string output = simulate(make_request(), profile, {"r01"}, 9);
    CHECK(output.find("SATISFIED: r01,r02,r03,r04") != std::string::npos);
}

TEST_CASE("simulate draws are independent across example ids") {
    const auto registry = test_helpers::make_registry(8);
    const auto profile = test_helpers::make_profile(registry, 0.5, 0.5);
    const std::string a = simulate(make_request("p0", "e0"), profile, {}, 7);
    const std::string b = simulate(make_request("p0", "e1"), profile, {}, 7);
    CHECK(a != b);  // 8 fair coins twice: equality odds 1/256 per draw set, keyed apart
}

TEST_CASE("simulate rejects specified ids the profile does not cover") {
    const auto registry = test_helpers::make_registry(2);
    const auto profile = test_helpers::make_profile(registry, 1.0, 1.0);
    CHECK_THROWS_AS(simulate(make_request(), profile, {"ghost"}, 1), IntegrityError);
}

TEST_CASE("linear decay: specified satisfaction converges to p*decay(m)") {
    // p_specified = 1, rate chosen so decay at m=19 is 0.8.
    const auto registry = test_helpers::make_registry(19);
    auto profile = test_helpers::make_profile(registry, 1.0, 0.5,
                                              InterferenceMode::linear, 0.2 / 18.0);
    CHECK(profile.decay(19) == doctest::Approx(0.8));

    std::vector<std::string> all_ids = registry.canonical_order;
    const int n_examples = 400;
    std::size_t satisfied = 0, total = 0;
    for (int e = 0; e < n_examples; ++e) {
        auto request = make_request("p-full", "e" + std::to_string(e));
        const std::string output = simulate(request, profile, all_ids, 11);
        for (const auto& id : all_ids) {
            ++total;
            if (reqlab::validators::manifest_validate(id, output).satisfied) ++satisfied;
        }
    }
    const double observed = static_cast<double>(satisfied) / static_cast<double>(total);
    // 3 sigma for a Bernoulli(0.8) mean over 19*400 draws
    const double sigma = std::sqrt(0.8 * 0.2 / static_cast<double>(total));
    CHECK(observed > 0.8 - 3 * sigma);
    CHECK(observed < 0.8 + 3 * sigma);
}

TEST_CASE("exponential decay formula") {
    SatisfactionProfile profile;
    profile.requirements["r"] = {1.0, 1.0};
    profile.mode = InterferenceMode::exponential;
    profile.rate = 0.05;
    CHECK(profile.decay(1) == doctest::Approx(1.0));
    CHECK(profile.decay(11) == doctest::Approx(std::exp(-0.5)));
}

TEST_CASE("offline embedder is deterministic, 256-dim, and cosine-consistent") {
    OfflineHashEmbedder embedder;
    const auto a1 = embedder.embed("The output should not use Markdown.");
    const auto a2 = embedder.embed("The output should not use Markdown.");
    CHECK(a1 == a2);
    CHECK(a1.size() == 256);
    CHECK(cosine_similarity(a1, a2) == doctest::Approx(1.0));

    // Independent recomputation of the cosine from raw dot products.
    const auto b = embedder.embed("Answers must stay under five hundred words total.");
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a1.size(); ++i) {
        dot += a1[i] * b[i];
        na += a1[i] * a1[i];
        nb += b[i] * b[i];
    }
    const double expected = dot / (std::sqrt(na) * std::sqrt(nb));
    CHECK(cosine_similarity(a1, b) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(cosine_similarity(a1, b) < 0.99);  // distinct sentences

    CHECK(embedder.embed("").size() == 256);  // zero vector allowed
}

TEST_CASE("cosine_similarity oracle values and error cases") {
    CHECK(cosine_similarity({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0));
    CHECK(cosine_similarity({1, 0, 0}, {0, 1, 0}) == doctest::Approx(0.0));
    // hand recomputation: 32 / (sqrt(14) * sqrt(77))
    CHECK(cosine_similarity({1, 2, 3}, {4, 5, 6}) ==
          doctest::Approx(0.974631846).epsilon(1e-6));
    CHECK_THROWS_AS(cosine_similarity({1, 2}, {1, 2, 3}), ConfigError);
    CHECK_THROWS_AS(cosine_similarity({0, 0}, {1, 1}), ConfigError);
}

TEST_CASE("scripted provider replays responses and records requests") {
    ScriptedProvider scripted({"first", "second"});
    CHECK(scripted.complete(make_request()) == "first");
    CHECK(scripted.complete(make_request()) == "second");
    CHECK_THROWS_AS(scripted.complete(make_request()), ConfigError);
    CHECK(scripted.calls() == 3);
}

TEST_CASE("provider factory builds the configured set") {
    const auto registry = test_helpers::make_registry(2);
    nlohmann::json config = {
        {"providers",
         {{{"name", "sim"},
           {"kind", "simulated"},
           {"seed", 5},
           {"profile", profile_to_json(test_helpers::make_profile(registry, 1.0, 0.5))}},
          {{"name", "fix"}, {"kind", "scripted"}, {"responses", {"a"}}},
          {{"name", "embed"}, {"kind", "offline-embed"}}}},
        {"budget", {{"max_calls", 3}}}};
    const auto set = build_providers(config);
    CHECK(set.completions.count("sim") == 1);
    CHECK(set.completions.count("fix") == 1);
    CHECK(set.embedders.count("embed") == 1);
    CHECK(set.budget->max_calls() == 3);
    CHECK_THROWS_AS(set.completion("nope"), ConfigError);

    auto request = make_request();
    request.specified_ids = {"r01"};
    const std::string out = set.completion("sim")->complete(request);
    CHECK(out.find("SATISFIED:") != std::string::npos);
}

TEST_CASE("remote provider speaks the generic chat-completion shape") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/chat/completions",
                [&](const httplib::Request& req, httplib::Response& res) {
                    ++hits;
                    const auto body = nlohmann::json::parse(req.body);
                    CHECK(body.at("model") == "model-a");
                    CHECK(body.at("messages").size() == 2);
                    if (hits.load() == 1) {
                        res.status = 503;  // first call: transient failure
                        return;
                    }
                    CHECK(req.get_header_value("Authorization") == "Bearer sk-test");
                    nlohmann::json reply = {
                        {"choices",
                         {{{"message",
                            {{"role", "assistant"}, {"content", "remote says hi"}}}}}}};
                    res.set_content(reply.dump(), "application/json");
                });
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    setenv("REQLAB_TEST_KEY", "Bearer sk-test", 1);
    RemoteConfig config;
    config.name = "remote-test";
    config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    config.headers_env = {{"Authorization", "REQLAB_TEST_KEY"}};
    auto remote = std::make_shared<RemoteProvider>(config);
    CachedProvider wrapped(remote, nullptr, nullptr,
                           RetryPolicy{3, std::chrono::milliseconds(1)});

    CHECK(wrapped.complete(make_request()) == "remote says hi");
    CHECK(hits.load() == 2);  // 503 then success

    server.stop();
    server_thread.join();
}

TEST_CASE("remote provider surfaces malformed responses as parse errors") {
    httplib::Server server;
    server.Post("/v1/chat/completions",
                [](const httplib::Request&, httplib::Response& res) {
                    res.set_content("{\"unexpected\": true}", "application/json");
                });
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    RemoteConfig config;
    config.name = "remote-test";
    config.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    RemoteProvider remote(config);
    CHECK_THROWS_AS(remote.complete(make_request()), ParseError);

    server.stop();
    server_thread.join();
}
