#pragma once

#include <cstdint>
#include <initializer_list>

namespace semchan {

// Counter-based deterministic RNG: every draw is a pure function of
// (seed, purpose, counters...), so trials can run in any order — or in
// parallel — and still reproduce the sequential results bit for bit.
namespace rng {

inline constexpr std::uint64_t kPurposeCodewords = 1;
inline constexpr std::uint64_t kPurposeChannel = 2;
inline constexpr std::uint64_t kPurposeInduced = 3;

// SplitMix64 finalizer.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t keyed(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x8f1bbcdcbfa53e0bull;
    for (std::uint64_t w : words) h = mix(h ^ w);
    return h;
}

// Uniform double in [0, 1) from a keyed counter.
inline double u01(std::initializer_list<std::uint64_t> words) {
    return static_cast<double>(keyed(words) >> 11) * 0x1.0p-53;
}

} // namespace rng
} // namespace semchan
