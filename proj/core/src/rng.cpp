#include "dropletlab/rng.hpp"

#include <cmath>

namespace dropletlab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::mt19937_64 make_engine(RngSeed seed, std::string_view tag) {
    // Mix the tag into the seed, then expand through splitmix64 so that
    // nearby seeds and tags yield unrelated engine states.
    std::uint64_t state = seed ^ fnv1a64(tag);
    std::seed_seq seq{static_cast<unsigned>(splitmix64(state)),
                      static_cast<unsigned>(splitmix64(state) >> 32),
                      static_cast<unsigned>(splitmix64(state)),
                      static_cast<unsigned>(splitmix64(state) >> 32),
                      static_cast<unsigned>(splitmix64(state)),
                      static_cast<unsigned>(splitmix64(state) >> 32)};
    return std::mt19937_64(seq);
}

} // namespace

RngStream::RngStream(RngSeed seed, std::string_view tag) : engine_(make_engine(seed, tag)) {}

double RngStream::normal() {
    for (;;) {
        const double u = 2.0 * uniform01() - 1.0;
        const double v = 2.0 * uniform01() - 1.0;
        const double r2 = u * u + v * v;
        if (r2 > 0.0 && r2 < 1.0) {
            return u * std::sqrt(-2.0 * std::log(r2) / r2);
        }
    }
}

std::vector<double> RngStream::uniform_direction(int d) {
    std::vector<double> x(static_cast<std::size_t>(d));
    for (;;) {
        double norm2 = 0.0;
        for (auto& xi : x) {
            xi = normal();
            norm2 += xi * xi;
        }
        if (norm2 > 1e-300) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (auto& xi : x) xi *= inv;
            return x;
        }
    }
}

std::vector<double> RngStream::uniform_in_ball(int d, double radius) {
    std::vector<double> x = uniform_direction(d);
    const double r = radius * std::pow(uniform01(), 1.0 / static_cast<double>(d));
    for (auto& xi : x) xi *= r;
    return x;
}

} // namespace dropletlab
