#pragma once

#include <cstdint>

namespace trilab {

/// SplitMix64 finalizer: bijective 64-bit mix with strong avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Per-trial seed derivation. Trial streams depend only on (master seed,
/// trial index), never on scheduling, so parallel runs replay exactly.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

/// SplitMix64 generator. One instance per trial; instances are never shared
/// across threads.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    /// Unbiased integer in [0, bound), bound >= 1, by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        // Rejection threshold = 2^64 mod bound.
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

    /// Double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Exact Binomial(n, p) draw by sequential inversion of the probability
/// mass, walking up from k = 0 with start term (1-p)^n.
///
/// The walk is carried in long double so the start term stays representable
/// for means up to ~1e4; larger draws are split into independent halves
/// (Binomial(n,p) = Binomial(n1,p) + Binomial(n-n1,p)), which keeps every
/// chunk inside that envelope. Throws std::domain_error if the start term
/// still underflows (p too close to 1 with huge n).
std::int64_t sample_binomial_count(std::int64_t n, double p, SplitMix64& rng);

}  // namespace trilab
