#include "reqlab/optimizers/copro.hpp"

#include <cctype>
#include <sstream>

#include "reqlab/errors.hpp"

namespace reqlab::opt {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string feedback_table(const std::map<std::string, double>& per_requirement) {
    std::ostringstream out;
    out.precision(3);
    out << std::fixed;
    for (const auto& [id, accuracy] : per_requirement) {
        out << id << ": " << accuracy << "\n";
    }
    return out.str();
}

}  // namespace

std::vector<std::string> parse_candidates(const std::string& response) {
    std::vector<std::string> candidates;
    std::string current;
    bool in_candidate = false;
    std::istringstream lines(response);
    std::string line;
    auto flush = [&] {
        if (in_candidate) {
            const std::string text = trim(current);
            if (!text.empty()) candidates.push_back(text);
        }
        current.clear();
    };
    while (std::getline(lines, line)) {
        if (trim(line) == "CANDIDATE:") {
            flush();
            in_candidate = true;
            continue;
        }
        if (in_candidate) {
            current += line;
            current += "\n";
        }
    }
    flush();
    return candidates;
}

CoproResult copro_r_optimize(const std::string& seed_prompt,
                             providers::Provider& proposer,
                             const std::string& proposer_model_id,
                             const PromptScorer& scorer,
                             std::size_t budget,
                             std::size_t breadth,
                             const validators::Templates& templates) {
    if (budget < 1) throw ConfigError("copro: budget must be >= 1");
    if (breadth < 1) throw ConfigError("copro: breadth must be >= 1");

    CoproResult result;
    PromptEvaluation best_eval = scorer(seed_prompt);  // baseline; not budgeted
    result.best_prompt = seed_prompt;
    result.best_score = best_eval.objective;

    std::size_t scored = 0;
    std::size_t round = 0;
    const std::size_t max_rounds = budget;  // guards against barren proposers
    while (scored < budget && round < max_rounds) {
        ++round;
        providers::CompletionRequest request;
        request.model_id = proposer_model_id;
        request.system_prompt = validators::render_template(
            templates.propose_system, {{"breadth", std::to_string(breadth)}});
        request.user_input = validators::render_template(
            templates.propose_user,
            {{"current_prompt", result.best_prompt},
             {"feedback", feedback_table(best_eval.per_requirement)}});

        std::vector<std::string> candidates;
        try {
            candidates = parse_candidates(proposer.complete(request));
        } catch (const std::exception& e) {
            result.failures.push_back("round " + std::to_string(round) + ": " + e.what());
            continue;
        }
        if (candidates.empty()) {
            result.failures.push_back("round " + std::to_string(round) +
                                      ": no CANDIDATE blocks in proposer response");
            continue;
        }
        if (candidates.size() > breadth) candidates.resize(breadth);

        for (const auto& candidate : candidates) {
            if (scored >= budget) break;
            try {
                PromptEvaluation eval = scorer(candidate);
                ++scored;
                result.candidates.push_back({candidate, eval.objective, round});
                if (eval.objective > result.best_score) {
                    result.best_prompt = candidate;
                    result.best_score = eval.objective;
                    best_eval = std::move(eval);
                }
            } catch (const std::exception& e) {
                result.failures.push_back("candidate in round " + std::to_string(round) +
                                          ": " + e.what());
            }
        }
    }
    return result;
}

double generic_judge_score(const std::string& prompt_text,
                           const std::vector<std::string>& outputs,
                           providers::Provider& judge,
                           const std::string& judge_model_id,
                           const validators::Templates& templates) {
    if (outputs.empty()) throw ConfigError("generic_judge_score: no outputs");

    double sum = 0.0;
    for (const auto& output : outputs) {
        providers::CompletionRequest request;
        request.model_id = judge_model_id;
        request.system_prompt = templates.generic_judge_system;
        request.user_input = validators::render_template(
            templates.generic_judge_user, {{"prompt", prompt_text}, {"output", output}});

        const std::string response = judge.complete(request);
        static const std::string kPrefix = "SCORE:";
        std::string score_line;
        std::istringstream lines(response);
        std::string line;
        while (std::getline(lines, line)) {
            const std::string t = trim(line);
            if (t.rfind(kPrefix, 0) == 0) score_line = t;
        }
        if (score_line.empty()) {
            throw ParseError("judge response has no SCORE line");
        }
        const std::string value = trim(score_line.substr(kPrefix.size()));
        int score = 0;
        try {
            score = std::stoi(value);
        } catch (const std::exception&) {
            throw ParseError("judge score is not an integer: " + value);
        }
        if (score < 1 || score > 10) {
            throw ParseError("judge score out of range 1-10: " + value);
        }
        sum += static_cast<double>(score);
    }
    return sum / static_cast<double>(outputs.size());
}

}  // namespace reqlab::opt
