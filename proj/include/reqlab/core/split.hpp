#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "reqlab/core/types.hpp"

namespace reqlab::core {

/// Deterministic train/validation/test split.
///
/// Rounding rule: |train| = floor(n * ratio_train), |val| = floor(n *
/// ratio_val), test takes the remainder (a 1e-9 slack absorbs binary
/// representation error in the products). Examples are shuffled by seed
/// first, so the split is a pure function of (examples, ratios, seed).
///
/// Ratios must be non-negative and sum to 1 within 1e-9; otherwise
/// ConfigError.
DatasetSplit split_dataset(const std::vector<Example>& examples,
                           const std::array<double, 3>& ratios,
                           std::uint64_t seed);

}  // namespace reqlab::core
