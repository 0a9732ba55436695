#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "reqlab/providers/provider.hpp"
#include "reqlab/validators/templates.hpp"

namespace reqlab::opt {

/// Scoring result the rewrite optimizer needs: the objective plus the
/// per-requirement accuracy table that is fed back to the proposer.
struct PromptEvaluation {
    double objective = 0.0;
    std::map<std::string, double> per_requirement;
};

using PromptScorer = std::function<PromptEvaluation(const std::string& prompt_text)>;

struct CoproCandidate {
    std::string text;
    double score = 0.0;
    std::size_t round = 0;
};

struct CoproResult {
    std::string best_prompt;
    double best_score = 0.0;
    std::vector<CoproCandidate> candidates;  // scored, in evaluation order
    std::vector<std::string> failures;       // skipped candidates / rounds
};

/// Requirement-scored iterative rewriter: each round asks the proposer for
/// `breadth` rewritten instruction candidates given the current best
/// prompt and its per-requirement accuracy table; every candidate is
/// scored with `scorer` (which must evaluate all registry requirements);
/// the best prompt is retained. Stops after `budget` scored candidates.
/// The seed prompt's baseline measurement does not count against the
/// budget. Proposer failures skip the round and are reported; with zero
/// successful candidates the seed prompt is returned.
CoproResult copro_r_optimize(const std::string& seed_prompt,
                             providers::Provider& proposer,
                             const std::string& proposer_model_id,
                             const PromptScorer& scorer,
                             std::size_t budget = 9,
                             std::size_t breadth = 3,
                             const validators::Templates& templates =
                                 validators::default_templates());

/// Splits a proposer response into candidate blocks separated by
/// "CANDIDATE:" marker lines. Exposed for tests.
std::vector<std::string> parse_candidates(const std::string& response);

/// The requirement-agnostic baseline metric: a judge scores each output
/// 1..10 ("SCORE: n" final line); returns the mean. Unparseable scores
/// raise ParseError.
double generic_judge_score(const std::string& prompt_text,
                           const std::vector<std::string>& outputs,
                           providers::Provider& judge,
                           const std::string& judge_model_id,
                           const validators::Templates& templates =
                               validators::default_templates());

}  // namespace reqlab::opt
