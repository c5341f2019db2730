#ifndef DROPLETLAB_RNG_HPP
#define DROPLETLAB_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace dropletlab {

using RngSeed = std::uint64_t;

/// Deterministic random stream derived from a top-level seed and a label.
///
/// Identical (seed, tag) pairs produce bit-identical sequences: the raw
/// mt19937_64 output is fully specified by the standard and all
/// distributions below are hand-rolled transforms of it, so results do not
/// depend on the standard library's distribution implementations.
/// Concurrent callers should each derive their own stream; streams never
/// share state.
class RngStream {
public:
    RngStream(RngSeed seed, std::string_view tag);

    std::uint64_t raw() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Standard normal via the Marsaglia polar method.
    double normal();

    /// Uniform direction on the unit sphere in R^d.
    std::vector<double> uniform_direction(int d);

    /// Uniform point in the ball of given radius centered at the origin.
    std::vector<double> uniform_in_ball(int d, double radius);

private:
    std::mt19937_64 engine_;
};

} // namespace dropletlab

#endif
