#ifndef ROCCH_RANDOM_HPP
#define ROCCH_RANDOM_HPP

#include <cstdint>
#include <random>

namespace rocch {

// mt19937_64 output is fully specified by the standard; the library's
// distributions are not, so uniforms are derived by hand.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double unit_uniform(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace rocch

#endif  // ROCCH_RANDOM_HPP
