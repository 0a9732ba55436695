#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace reqlab::util {

/// splitmix64 (Vigna, public domain). This is the one PRNG used for every
/// seeded draw in the toolkit; it is fixed across releases so shuffles,
/// splits, and simulated runs are reproducible byte-for-byte on any
/// platform. Standard distributions are implementation-defined, so all
/// bounded/unit draws are derived here instead.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound) via Lemire's multiply-shift.
    /// bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<__uint128_t>(next()) * bound) >> 64);
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double next_unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool next_bernoulli(double p) { return next_unit() < p; }

private:
    std::uint64_t state_;
};

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

/// Chains a field into an FNV-1a state, inserting a 0x1f separator so
/// that ("ab","c") and ("a","bc") hash differently.
inline std::uint64_t fnv1a64_chain(std::uint64_t state, std::string_view bytes) {
    for (unsigned char c : bytes) {
        state ^= c;
        state *= kFnvPrime;
    }
    state ^= 0x1f;
    state *= kFnvPrime;
    return state;
}

/// FNV-1a 64-bit over raw bytes. Used for cache digests and for keying
/// per-cell simulated draws.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t state = kFnvOffset;
    for (unsigned char c : bytes) {
        state ^= c;
        state *= kFnvPrime;
    }
    return state;
}

/// Finalizes a 64-bit hash into a uniform double in [0, 1) by running it
/// through one splitmix64 step.
inline double unit_from_hash(std::uint64_t h) {
    return SplitMix64(h).next_unit();
}

inline std::string to_hex(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

/// In-place Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void shuffle(std::vector<T>& items, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace reqlab::util
