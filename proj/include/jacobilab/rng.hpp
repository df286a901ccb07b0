#ifndef JACOBILAB_RNG_HPP
#define JACOBILAB_RNG_HPP

#include <cstdint>

namespace jlab {

/// Counter-based stream: every draw is a pure function of the key tuple, so
/// results never depend on execution order or worker count.
namespace rng {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Hash of (seed, stream, counter, slot) into a 64-bit word.
constexpr std::uint64_t keyed(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter, std::uint64_t slot) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ mix64(stream + 0x632be59bd9b4e019ULL));
    h = mix64(h ^ mix64(counter + 0x9e3779b97f4a7c15ULL));
    h = mix64(h ^ mix64(slot + 0xd1b54a32d192ed03ULL));
    return h;
}

/// Uniform in (0, 1).
double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
               std::uint64_t slot);

/// Standard normal via Box-Muller on two keyed uniforms.
double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                std::uint64_t slot);

} // namespace rng
} // namespace jlab

#endif
