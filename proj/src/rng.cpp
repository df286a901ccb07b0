#include "jacobilab/rng.hpp"

#include <cmath>

namespace jlab::rng {

double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
               std::uint64_t slot) {
    const std::uint64_t h = keyed(seed, stream, counter, slot);
    // 53-bit mantissa, shifted into (0,1)
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                std::uint64_t slot) {
    const double u1 = uniform(seed, stream, counter, 2 * slot);
    const double u2 = uniform(seed, stream, counter, 2 * slot + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace jlab::rng
