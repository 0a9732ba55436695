#pragma once

#include <map>
#include <string>

namespace reqlab::validators {

/// Editable prompt texts for every LLM-facing operation. Each slot is a
/// (system, user) pair; {placeholders} are substituted by
/// render_template. The compiled-in defaults live in templates.cpp and
/// are mirrored by the files under templates/; load_templates overrides
/// any slot whose file exists in the given directory.
struct Templates {
    std::string planning_system, planning_user;
    std::string execution_system, execution_user;
    std::string brainstorm_system, brainstorm_user;
    std::string error_analysis_system, error_analysis_user;
    std::string extract_system, extract_user;
    std::string propose_system, propose_user;
    std::string generic_judge_system, generic_judge_user;
};

Templates default_templates();

/// Loads overrides from <dir>/<slot>.txt (e.g. planning_system.txt);
/// missing files keep the default.
Templates load_templates(const std::string& dir);

/// Replaces every "{name}" occurrence with values.at(name). Placeholders
/// without a value are left untouched.
std::string render_template(const std::string& text,
                            const std::map<std::string, std::string>& values);

}  // namespace reqlab::validators
