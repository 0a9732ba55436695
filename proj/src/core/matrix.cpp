#include "reqlab/core/types.hpp"

#include <set>

namespace reqlab::core {

void SatisfactionMatrix::add_verdict(const VerdictRecord& verdict, bool specified) {
    Cell& cell = cells_[{verdict.model_id, verdict.prompt_id, verdict.requirement_id}];
    cell.n += 1;
    if (verdict.satisfied) cell.n_satisfied += 1;
    cell.specified = specified;
}

const Cell* SatisfactionMatrix::find(const CellKey& key) const {
    auto it = cells_.find(key);
    return it == cells_.end() ? nullptr : &it->second;
}

std::vector<std::string> SatisfactionMatrix::model_ids() const {
    std::set<std::string> out;
    for (const auto& [key, _] : cells_) out.insert(key.model_id);
    return {out.begin(), out.end()};
}

std::vector<std::string> SatisfactionMatrix::prompt_ids(const std::string& model_id) const {
    std::set<std::string> out;
    for (const auto& [key, _] : cells_) {
        if (key.model_id == model_id) out.insert(key.prompt_id);
    }
    return {out.begin(), out.end()};
}

std::vector<std::string> SatisfactionMatrix::requirement_ids(const std::string& model_id) const {
    std::set<std::string> out;
    for (const auto& [key, _] : cells_) {
        if (key.model_id == model_id) out.insert(key.requirement_id);
    }
    return {out.begin(), out.end()};
}

}  // namespace reqlab::core
