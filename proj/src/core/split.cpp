#include "reqlab/core/split.hpp"

#include <cmath>

#include "reqlab/errors.hpp"
#include "reqlab/util/rng.hpp"

namespace reqlab::core {

DatasetSplit split_dataset(const std::vector<Example>& examples,
                           const std::array<double, 3>& ratios,
                           std::uint64_t seed) {
    for (double r : ratios) {
        if (r < 0.0) throw ConfigError("split ratios must be non-negative");
    }
    const double sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError("split ratios must sum to 1");
    }

    std::vector<std::string> ids;
    ids.reserve(examples.size());
    for (const auto& e : examples) ids.push_back(e.id);
    util::shuffle(ids, seed);

    const double n = static_cast<double>(ids.size());
    const auto n_train = static_cast<std::size_t>(std::floor(n * ratios[0] + 1e-9));
    const auto n_val = static_cast<std::size_t>(std::floor(n * ratios[1] + 1e-9));

    DatasetSplit split;
    split.train.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.validation.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train),
                            ids.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
    split.test.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), ids.end());
    return split;
}

}  // namespace reqlab::core
