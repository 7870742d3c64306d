#pragma once

#include <cstdint>
#include <random>

namespace wildfire {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Episode seed derivation: splitmix64(splitmix64(master) ^ episode).
/// Depends only on the pair, never on scheduling.
constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t episode) noexcept {
    return splitmix64(splitmix64(master) ^ episode);
}

/// The per-episode generator. Uniforms are built from the top 53 bits so the
/// stream is identical on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_episode(std::uint64_t master, std::uint64_t episode) { return Rng(mix_seed(master, episode)); }

    /// Uniform double in [0, 1).
    double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t bits() noexcept { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace wildfire
