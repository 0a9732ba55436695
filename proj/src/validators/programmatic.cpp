#include "reqlab/validators/programmatic.hpp"

#include <cctype>
#include <sstream>

#include "reqlab/composer/composer.hpp"

namespace reqlab::validators {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::size_t parse_count_arg(const std::string& ref, const std::string& arg) {
    if (arg.empty()) throw ConfigError("validator " + ref + " needs a numeric argument");
    for (char c : arg) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ConfigError("validator " + ref + " needs a numeric argument");
        }
    }
    return static_cast<std::size_t>(std::stoull(arg));
}

}  // namespace

ValidatorRef parse_validator_ref(const std::string& ref) {
    if (ref == "manifest") return {ValidatorKind::manifest, ""};
    if (ref == "judge") return {ValidatorKind::judge, ""};

    const auto open = ref.find('(');
    if (open == std::string::npos || ref.back() != ')') {
        throw ConfigError("unknown validator: " + ref);
    }
    const std::string name = ref.substr(0, open);
    const std::string arg = ref.substr(open + 1, ref.size() - open - 2);

    if (name == "length-at-least") {
        parse_count_arg(ref, arg);
        return {ValidatorKind::length_at_least, arg};
    }
    if (name == "word-count-at-most") {
        parse_count_arg(ref, arg);
        return {ValidatorKind::word_count_at_most, arg};
    }
    if (name == "forbidden-substring") {
        if (arg.empty()) throw ConfigError("forbidden-substring needs an argument");
        return {ValidatorKind::forbidden_substring, arg};
    }
    if (name == "required-substring") {
        if (arg.empty()) throw ConfigError("required-substring needs an argument");
        return {ValidatorKind::required_substring, arg};
    }
    throw ConfigError("unknown validator: " + ref);
}

bool is_known_validator(const std::string& ref) {
    try {
        parse_validator_ref(ref);
        return true;
    } catch (const ConfigError&) {
        return false;
    }
}

Verdict programmatic_validate(const std::string& validator_name,
                              const core::TaskSpec& task,
                              const std::string& input,
                              const std::string& output) {
    (void)task;
    (void)input;
    const ValidatorRef ref = parse_validator_ref(validator_name);
    switch (ref.kind) {
        case ValidatorKind::length_at_least: {
            const std::size_t min_chars = std::stoull(ref.arg);
            const bool ok = output.size() >= min_chars;
            return make_verdict(true, ok,
                                "output has " + std::to_string(output.size()) +
                                    " characters, needs at least " + ref.arg);
        }
        case ValidatorKind::word_count_at_most: {
            const std::size_t max_words = std::stoull(ref.arg);
            const std::size_t words = composer::count_tokens(output);
            return make_verdict(true, words <= max_words,
                                "output has " + std::to_string(words) +
                                    " words, allowed at most " + ref.arg);
        }
        case ValidatorKind::forbidden_substring: {
            const bool found = output.find(ref.arg) != std::string::npos;
            return make_verdict(true, !found,
                                found ? "forbidden substring present" : "");
        }
        case ValidatorKind::required_substring: {
            const bool found = output.find(ref.arg) != std::string::npos;
            return make_verdict(true, found,
                                found ? "" : "required substring missing");
        }
        case ValidatorKind::manifest:
        case ValidatorKind::judge:
            throw ConfigError("validator " + validator_name + " is not programmatic");
    }
    throw ConfigError("unknown validator: " + validator_name);
}

Verdict manifest_validate(const std::string& requirement_id,
                          const std::string& output_with_manifest) {
    static const std::string kPrefix = "SATISFIED:";

    std::string manifest_line;
    bool found = false;
    std::istringstream lines(output_with_manifest);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind(kPrefix, 0) == 0) {
            manifest_line = line;
            found = true;
        }
    }
    if (!found) {
        throw ParseError("output has no SATISFIED manifest line");
    }

    std::istringstream ids(manifest_line.substr(kPrefix.size()));
    std::string id;
    while (std::getline(ids, id, ',')) {
        if (trim(id) == requirement_id) {
            return make_verdict(true, true);
        }
    }
    return make_verdict(true, false, "not listed in manifest");
}

}  // namespace reqlab::validators
