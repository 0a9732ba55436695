#include "reqlab/elicitation/elicitation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "reqlab/errors.hpp"

namespace reqlab::elicit {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string join_lines(const std::vector<std::string>& items, const std::string& prefix) {
    std::ostringstream out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out << "\n";
        out << prefix << items[i];
    }
    return out.str();
}

}  // namespace

std::vector<std::string> parse_bullets(const std::string& response) {
    std::vector<std::string> bullets;
    std::istringstream lines(response);
    std::string line;
    while (std::getline(lines, line)) {
        const std::string t = trim(line);
        if (t.rfind("- ", 0) == 0) {
            const std::string text = trim(t.substr(2));
            if (!text.empty()) bullets.push_back(text);
        }
    }
    return bullets;
}

std::vector<CandidateRequirement> extract_from_prompt(
    const std::string& prompt_text,
    providers::Provider& provider,
    const std::string& model_id,
    const validators::Templates& templates) {
    if (trim(prompt_text).empty()) return {};

    providers::CompletionRequest request;
    request.model_id = model_id;
    request.system_prompt = templates.extract_system;
    request.user_input =
        validators::render_template(templates.extract_user, {{"prompt_text", prompt_text}});

    std::vector<CandidateRequirement> out;
    for (const auto& text : parse_bullets(provider.complete(request))) {
        out.push_back({text, core::Source::existing_prompt, "prompt"});
    }
    return out;
}

std::vector<CandidateRequirement> brainstorm(
    const core::TaskSpec& task,
    const std::vector<std::string>& existing_requirements,
    providers::Provider& provider,
    const std::string& model_id,
    const validators::Templates& templates) {
    providers::CompletionRequest request;
    request.model_id = model_id;
    request.system_prompt = templates.brainstorm_system;
    request.user_input = validators::render_template(
        templates.brainstorm_user,
        {{"task_description", task.description},
         {"existing", join_lines(existing_requirements, "- ")}});

    std::vector<CandidateRequirement> out;
    for (const auto& text : parse_bullets(provider.complete(request))) {
        out.push_back({text, core::Source::brainstorm, task.id});
    }
    return out;
}

std::vector<CandidateRequirement> error_analysis(
    const core::TaskSpec& task,
    const std::vector<std::string>& existing_requirements,
    const std::vector<std::string>& model_outputs,
    providers::Provider& provider,
    const std::string& model_id,
    const validators::Templates& templates) {
    if (model_outputs.empty()) {
        throw ConfigError("error_analysis needs at least one model output");
    }

    std::ostringstream outputs;
    for (std::size_t i = 0; i < model_outputs.size(); ++i) {
        if (i) outputs << "\n\n";
        outputs << "Output " << (i + 1) << ":\n" << model_outputs[i];
    }

    providers::CompletionRequest request;
    request.model_id = model_id;
    request.system_prompt = templates.error_analysis_system;
    request.user_input = validators::render_template(
        templates.error_analysis_user,
        {{"task_description", task.description},
         {"existing", join_lines(existing_requirements, "- ")},
         {"outputs", outputs.str()}});

    std::vector<CandidateRequirement> out;
    for (const auto& text : parse_bullets(provider.complete(request))) {
        out.push_back({text, core::Source::error_analysis, task.id});
    }
    return out;
}

std::vector<CandidateRequirement> dedup(const std::vector<CandidateRequirement>& candidates,
                                        providers::Embedder& embedder,
                                        double threshold) {
    // Pinned pass order: existing-prompt, brainstorm, error-analysis;
    // stable within each source.
    std::vector<const CandidateRequirement*> ordered;
    for (core::Source source : {core::Source::existing_prompt, core::Source::brainstorm,
                                core::Source::error_analysis}) {
        for (const auto& candidate : candidates) {
            if (candidate.source == source) ordered.push_back(&candidate);
        }
    }

    std::vector<CandidateRequirement> kept;
    std::vector<std::vector<double>> kept_embeddings;
    for (const CandidateRequirement* candidate : ordered) {
        if (candidate->source == core::Source::existing_prompt) {
            kept.push_back(*candidate);
            kept_embeddings.push_back(embedder.embed(candidate->text));
            continue;
        }
        const std::vector<double> embedding = embedder.embed(candidate->text);
        bool duplicate = false;
        for (const auto& other : kept_embeddings) {
            if (providers::cosine_similarity(embedding, other) > threshold) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            kept.push_back(*candidate);
            kept_embeddings.push_back(embedding);
        }
    }
    return kept;
}

}  // namespace reqlab::elicit
