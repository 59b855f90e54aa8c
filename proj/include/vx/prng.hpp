// Deterministic pseudo-random generator for seeded test sampling.
//
// A fixed, self-contained splitmix64 stream is used instead of <random>
// distributions so that sampled checks (and therefore reports) are
// byte-identical for a fixed seed on every platform and standard library.
#pragma once

#include <cstdint>

namespace vx {

class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    /// Next raw 64-bit value (splitmix64).
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish integer in [lo, hi] (inclusive). Requires lo <= hi.
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Index into a container of the given size. Requires size > 0.
    std::size_t index(std::size_t size) {
        return static_cast<std::size_t>(next() % size);
    }

private:
    std::uint64_t state_;
};

} // namespace vx
