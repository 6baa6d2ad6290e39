#pragma once

#include <cstdint>

namespace gseelab {

// Deterministic RNG with counter-based stream splitting.
//
// std::<random> distributions are implementation-defined, which would break the
// byte-identical reproducibility contract, so sampling primitives are written out
// here. Streams are derived from (master seed, stream index) through splitmix64,
// so a trial gets the same stream no matter which worker runs it.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    // Independent stream i of a master seed.
    static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
        std::uint64_t sm = master_seed;
        std::uint64_t a = splitmix64(sm);
        sm = a ^ (index * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
        return Rng(splitmix64(sm));
    }

    // xoshiro256**
    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

} // namespace gseelab
