#pragma once

#include <string>

#include "reqlab/errors.hpp"

namespace reqlab::validators {

/// One applicability/satisfaction judgment. Convention throughout the
/// toolkit: a requirement that does not apply counts as satisfied, so
/// applicable=false forces satisfied=true.
struct Verdict {
    bool applicable = true;
    bool satisfied = false;
    std::string rationale;
};

inline Verdict make_verdict(bool applicable, bool satisfied, std::string rationale = "") {
    if (!applicable && !satisfied) {
        throw IntegrityError("verdict with applicable=false must have satisfied=true");
    }
    return Verdict{applicable, satisfied, std::move(rationale)};
}

inline Verdict not_applicable_verdict(std::string rationale = "") {
    return Verdict{false, true, std::move(rationale)};
}

}  // namespace reqlab::validators
