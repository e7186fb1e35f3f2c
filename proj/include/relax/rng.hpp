#pragma once

#include <cstdint>

namespace relax {

// splitmix64: counter-based, so a value keyed by (seed, index) is independent
// of evaluation order and thread schedule.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t keyed_u64(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(splitmix64(seed) ^ splitmix64(counter * 0x9e3779b97f4a7c15ULL + 1));
}

// uniform in [0, 1)
inline double keyed_uniform(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(keyed_u64(seed, counter) >> 11) * 0x1.0p-53;
}

// uniform in [-1, 1)
inline double keyed_symmetric(std::uint64_t seed, std::uint64_t counter) {
    return 2.0 * keyed_uniform(seed, counter) - 1.0;
}

} // namespace relax
