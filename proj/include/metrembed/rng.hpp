#pragma once

#include <cmath>
#include <cstdint>

namespace metrembed {

// All randomness in the library flows from one explicit 64-bit seed through
// this generator, so outputs are reproducible across platforms and can be
// matched by reimplementations. Algorithm (versioned below):
//   - core stream: splitmix64 (Vigna 2015 constants)
//   - unit doubles: top 53 bits / 2^53, in [0, 1)
//   - gaussians: Box-Muller on two consecutive uniforms, no caching
//   - substreams: state = splitmix64_mix(seed ^ (0x9E3779B97F4A7C15 * (id+1)))
inline constexpr const char* kRngVersion = "splitmix64/box-muller/v1";

namespace detail {
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return detail::splitmix64_mix(state_);
    }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., n-1}. Plain modulo: the tiny bias is irrelevant at
    // our ranges and keeps the algorithm trivially portable.
    std::uint64_t next_below(std::uint64_t n) { return n ? next_u64() % n : 0; }

    std::int64_t next_in(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool next_bool() { return (next_u64() & 1u) != 0; }

    double next_gauss() {
        // u1 in (0, 1] so the log is finite.
        double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
    }

    // Independent substream; derivation depends only on (seed, id), never on
    // how much of this stream was consumed.
    static Rng substream(std::uint64_t seed, std::uint64_t id) {
        return Rng(detail::splitmix64_mix(seed ^ (0x9E3779B97F4A7C15ull * (id + 1))));
    }

private:
    std::uint64_t state_;
};

}  // namespace metrembed
