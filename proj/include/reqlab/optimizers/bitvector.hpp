#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reqlab/util/rng.hpp"

namespace reqlab::opt {

/// Binary requirement configuration; element i is 0/1 for the requirement
/// at canonical position i.
using BitVector = std::vector<std::uint8_t>;

std::string bits_to_string(const BitVector& bits);
BitVector bits_from_string(const std::string& s);

std::size_t popcount(const BitVector& bits);

/// Packs into an integer (bit i of the result = bits[i]); needs n <= 63.
std::uint64_t pack_bits(const BitVector& bits);
BitVector unpack_bits(std::uint64_t value, std::size_t n);

/// Total preference order used everywhere a tie on score must be broken:
/// fewer set bits first (shorter prompt), then lexicographically smaller.
/// Returns true when a is preferred over b.
bool preferred_bits(const BitVector& a, const BitVector& b);

BitVector random_bits(std::size_t n, util::SplitMix64& rng);

}  // namespace reqlab::opt
