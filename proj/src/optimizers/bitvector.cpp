#include "reqlab/optimizers/bitvector.hpp"

#include "reqlab/errors.hpp"

namespace reqlab::opt {

std::string bits_to_string(const BitVector& bits) {
    std::string out(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) out[i] = '1';
    }
    return out;
}

BitVector bits_from_string(const std::string& s) {
    BitVector bits(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            bits[i] = 1;
        } else if (s[i] != '0') {
            throw ParseError("bitvector string must contain only 0/1: " + s);
        }
    }
    return bits;
}

std::size_t popcount(const BitVector& bits) {
    std::size_t count = 0;
    for (auto b : bits) count += b ? 1 : 0;
    return count;
}

std::uint64_t pack_bits(const BitVector& bits) {
    if (bits.size() > 63) throw ConfigError("pack_bits: more than 63 bits");
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) value |= (std::uint64_t{1} << i);
    }
    return value;
}

BitVector unpack_bits(std::uint64_t value, std::size_t n) {
    BitVector bits(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        bits[i] = static_cast<std::uint8_t>((value >> i) & 1);
    }
    return bits;
}

bool preferred_bits(const BitVector& a, const BitVector& b) {
    const std::size_t pa = popcount(a), pb = popcount(b);
    if (pa != pb) return pa < pb;
    return a < b;  // lexicographic
}

BitVector random_bits(std::size_t n, util::SplitMix64& rng) {
    BitVector bits(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        bits[i] = static_cast<std::uint8_t>(rng.next() & 1);
    }
    return bits;
}

}  // namespace reqlab::opt
