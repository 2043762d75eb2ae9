#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace recd {

using Rng = std::mt19937_64;

// Finalizer of splitmix64; good avalanche for seed mixing.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// FNV-1a over a short tag string, used to separate seed streams by stage.
constexpr std::uint64_t seed_tag(std::string_view tag) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : tag) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Deterministic child seed from (base seed, stream tag, index). Trials,
// per-individual fitness evaluations and ensemble stages all derive their
// generators through this, so serial and parallel schedules agree.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index = 0) {
    return splitmix64(base ^ splitmix64(stream ^ splitmix64(index)));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

} // namespace recd
