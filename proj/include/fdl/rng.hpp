#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fdl {

using Rng = std::mt19937_64;

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Named substream derived from a root seed. Streams are stable per name, so
// adding a new component never perturbs the draws of existing ones.
inline Rng substream(uint64_t root_seed, std::string_view component) {
    return Rng(splitmix64(root_seed ^ fnv1a64(component)));
}

inline Rng substream(uint64_t root_seed, std::string_view component, uint64_t index) {
    return Rng(splitmix64(splitmix64(root_seed ^ fnv1a64(component)) + index));
}

}  // namespace fdl
