#pragma once

// =============================================================================
// Counter-based random streams
// =============================================================================
// Every stochastic quantity in the toolkit is drawn from a stream addressed by
// a 64-bit key (derived from seed + context) and a running counter. Draw k of
// stream s is a pure function of (s, k), so results do not depend on scheduling
// or evaluation order, and equal seeds give bit-identical outputs.
// =============================================================================

#include <bit>
#include <cmath>
#include <cstdint>

namespace tsepcal {

/// Fibonacci/splitmix-style 64-bit mixer (finalizer of splitmix64).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Combine a key with more context (field values, indices).
constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return mix64(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
}

/// Hash a double through its bit pattern (exact, no rounding ambiguity).
inline std::uint64_t hash_double(std::uint64_t key, double v) {
    return mix64(key, std::bit_cast<std::uint64_t>(v));
}

/// Stateless counter-based generator: draw i of stream `key` is mix64(key, i).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return mix64(key_, counter_++); }

    /// Uniform in (0, 1); never returns 0 so it is safe under log().
    double next_unit() {
        const std::uint64_t u = next_u64();
        return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (two uniforms per draw, no cached spare,
    /// so the draw index -> value map stays counter-pure).
    double next_normal() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    [[nodiscard]] std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace tsepcal
