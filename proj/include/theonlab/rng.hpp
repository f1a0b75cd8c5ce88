#pragma once

#include <cstdint>

namespace theonlab {

// SplitMix64 finalizer (Stafford mix13).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed-splitting rule used by every sharded sampler: stream `c` of master
// seed `s` is mix64(s ^ mix64(c + 1)).  Chunked estimates are reproducible
// from (master seed, chunk size) alone, independent of thread count.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master ^ mix64(stream + 1));
}

// xoshiro256** — small, fast, and fully specified here so results do not
// depend on the standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) {
            sm += 0x9e3779b97f4a7c15ULL;
            w = mix64(sm);
        }
    }

    std::uint64_t u64() {
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

    // Uniform in [0,1), 53 random bits.
    double unit() { return (u64() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

} // namespace theonlab
