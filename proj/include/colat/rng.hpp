#pragma once

#include <cstdint>

#include "colat/numeric.hpp"

namespace colat {

// Counter-based deterministic generator (splitmix64 applied to
// seed + golden-ratio counter).  Output depends only on (seed, counter),
// never on platform RNG state, so every instance regenerates bit-identically.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() { return at(seed_, counter_++); }

    static std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Independent stream for a sub-task; tag keeps streams from colliding.
    Rng fork(std::uint64_t tag) const { return Rng(at(seed_ ^ 0xa5a5a5a5a5a5a5a5ULL, tag)); }

    // Uniform integer with exactly `bits` bits (top bit set), bits >= 1.
    Int next_bits(unsigned bits) {
        Int z = 0;
        unsigned words = (bits + 63) / 64;
        for (unsigned i = 0; i < words; ++i) {
            z <<= 64;
            z += u64_to_int(next());
        }
        Int mask = (Int(1) << bits) - 1;
        z &= mask;
        z |= Int(1) << (bits - 1);
        return z;
    }

    // Uniform in [0, m); draws 64 bits more than needed so the modulo bias
    // is below 2^-64.
    Int next_below(const Int& m) {
        if (sgn(m) <= 0) throw error("Rng::next_below: bound must be positive");
        unsigned bits = unsigned(mpz_sizeinbase(m.get_mpz_t(), 2)) + 64;
        Int z = 0;
        unsigned words = (bits + 63) / 64;
        for (unsigned i = 0; i < words; ++i) {
            z <<= 64;
            z += u64_to_int(next());
        }
        return z % m;
    }

    // Uniform rational in [0,1) with denominator 2^64.
    Rat next_unit() {
        Rat q(u64_to_int(next()), Int(1) << 64);
        q.canonicalize();
        return q;
    }

    // Uniform integer in [lo, hi].
    long next_range(long lo, long hi) {
        return lo + long(mpz_get_ui(next_below(Int(hi - lo + 1)).get_mpz_t()));
    }

  private:
    static Int u64_to_int(std::uint64_t v) {
        Int z;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace colat
