#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace rqp {

/// Seeded randomness handle. All draws go through the helpers below so
/// results are bit-for-bit reproducible across platforms (mt19937_64 is
/// fully specified; the distribution adapters in <random> are not).
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    bool coin() { return (gen_() & 1) != 0; }

    /// Uniform value with the low `bits` bits random, bits <= 64.
    uint64_t draw_bits(unsigned bits) {
        uint64_t word = gen_();
        return bits >= 64 ? word : (word & ((uint64_t{1} << bits) - 1));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n) by bit rejection (no modulo bias).
    uint64_t below(uint64_t n) {
        unsigned bits = static_cast<unsigned>(std::bit_width(n - 1));
        for (;;) {
            uint64_t v = draw_bits(bits);
            if (v < n) {
                return v;
            }
        }
    }

    uint64_t word() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

/// splitmix64 finalizer; used to derive independent per-task seeds from a
/// session seed without consuming the session stream.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace rqp
