#ifndef QCOVPCA_RNG_HPP
#define QCOVPCA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "qcovpca/errors.hpp"

namespace qcovpca {

// Deterministic 64-bit generator (xoshiro256**, seeded via splitmix64).
//
// All randomness in the library flows through this type so that runs are
// bit-reproducible across platforms and standard libraries. The sequence
// semantics are fixed:
//   next_u64()      xoshiro256** output
//   uniform()       (next_u64() >> 11) * 2^-53, in [0, 1)
//   uniform(a, b)   a + (b - a) * uniform()
//   normal()        Box-Muller on two uniform() draws (both always consumed)
//   index(p)        inversion sampling of a discrete distribution, one uniform()
//   split()         child generator seeded from next_u64(), advances this one
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the xoshiro state
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        // Box-Muller; u1 nudged away from 0 so log() stays finite
        double u1 = uniform();
        double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw OutOfRange("Rng::below: n must be positive");
        // rejection to remove modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    // Draws an index from a discrete distribution by CDF inversion.
    // Weights must be nonnegative; they are normalized by their sum.
    std::size_t index(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0)) throw OutOfRange("Rng::index: weights sum to zero");
        double u = uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        return weights.empty() ? 0 : weights.size() - 1;
    }

    Rng split() { return Rng(next_u64()); }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace qcovpca

#endif
