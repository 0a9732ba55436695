#include "reqlab/providers/provider.hpp"

#include <sstream>

#include "reqlab/util/rng.hpp"

namespace reqlab::providers {

std::string params_digest_text(const CompletionParams& params) {
    std::ostringstream out;
    out.precision(17);
    out << "temperature=" << params.temperature;
    out << ";seed=" << (params.seed ? std::to_string(*params.seed) : "none");
    out << ";max_output=" << params.max_output;
    return out.str();
}

std::string Provider::fingerprint(const CompletionRequest& request) const {
    std::uint64_t h = util::fnv1a64_chain(util::kFnvOffset, request.model_id);
    h = util::fnv1a64_chain(h, params_digest_text(request.params));
    return name() + ":" + util::to_hex(h);
}

}  // namespace reqlab::providers
