#pragma once

// Deterministic splittable PRNG (splitmix64). std:: distributions are not
// reproducible across standard library implementations; all randomized
// checks in this project must produce byte-identical reports from a seed,
// so we generate variates ourselves.

#include <cstdint>

#include "ctrop/numbers.hpp"

namespace ctrop {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Independent child stream; used to give each sample its own
    // generator so samples are insensitive to evaluation order.
    Rng split(std::uint64_t tag) {
        return Rng(next_u64() ^ (0xd1b54a32d192ed03ULL * (tag + 1)));
    }

    // Uniform in [0, n) by rejection; n > 0.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Positive rational with numerator and denominator in [1, max_part].
    Qi positive_rational(std::int64_t max_part) {
        Zi num(between(1, max_part));
        Zi den(between(1, max_part));
        return Qi(num, den);
    }

private:
    std::uint64_t state_;
};

} // namespace ctrop
