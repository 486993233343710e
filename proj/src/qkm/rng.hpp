// Deterministic seeding and query accounting.
//
// Every randomized run is driven by an RngSeed (master seed + stream index).
// Child streams are derived by hashing, never by splitting engine state, so
// trial i sees the same stream no matter how trials are scheduled.
#pragma once

#include <cstdint>

#include "qkm/common.hpp"

namespace qkm {

struct RngSeed {
    uint64_t master_seed = 0;
    uint64_t stream_index = 0;

    friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Pure function of (master_seed, stream_index, child_index); distinct child
// indices land in statistically independent streams.
inline RngSeed derive_stream(const RngSeed& seed, uint64_t child_index) {
    uint64_t h = mix64(seed.stream_index);
    h = mix64(h ^ mix64(child_index + 0x632BE59BD9B4E019ULL));
    return RngSeed{seed.master_seed, h};
}

// xoshiro256** with splitmix64 state expansion.
class Rng {
  public:
    explicit Rng(const RngSeed& seed) {
        uint64_t x = seed.master_seed ^ mix64(seed.stream_index ^ 0x9E3779B97F4A7C15ULL);
        for (auto& word : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            word = mix64(x);
        }
        state_[0] |= 1;  // never all-zero
    }

    uint64_t next_u64() {
        uint64_t result = rotl(state_[1] * 5, 7) * 9;
        uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n); rejection sampling, no modulo bias.
    uint64_t uniform_index(uint64_t n) {
        if (n == 0) raise(ErrorCode::invalid_argument, "uniform_index(0)");
        uint64_t threshold = (0 - n) % n;
        for (;;) {
            uint64_t x = next_u64();
            if (x >= threshold) return x % n;
        }
    }

    bool bernoulli(double p) { return uniform_double() < p; }

    uint8_t byte() { return static_cast<uint8_t>(next_u64() >> 56); }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t state_[4];
};

// Oracle-round accounting for one run. Conventions:
//   - oracle_rounds: coherent evaluations of the search/count predicate
//     (one per Grover iterate; a Count call charges its full M points; a
//     controlled power with 2^p iterations charges 2^p rounds).
//   - decider_calls: bounded-error decider invocations, including those
//     charged as-if for coherent applications inside amplitude
//     amplification.
//   - a_applications: uses of A or A^-1 in amplitude amplification.
// Monotone within a run; reset only between runs.
struct QueryCounter {
    uint64_t oracle_rounds = 0;
    uint64_t decider_calls = 0;
    uint64_t a_applications = 0;

    void add_rounds(uint64_t n) { oracle_rounds += n; }
    void add_decider_calls(uint64_t n) { decider_calls += n; }
    void add_a_applications(uint64_t n) { a_applications += n; }
    void reset() { *this = QueryCounter{}; }
};

}  // namespace qkm
