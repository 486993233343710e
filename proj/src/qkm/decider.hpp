// Gap decider for Hamming distance: answers whether two equal-length
// strings are within k mismatches, accepting anything up to (1 + eps) * k.
// One counting run with M = ceil(alpha * sqrt(N / k)) estimation points,
// alpha = 6 * pi / beta, beta = sqrt(1 + 3 eps / 2) - sqrt(1 + eps),
// compared against the midpoint threshold (1 + eps / 2) * k.
#pragma once

#include <cstdint>
#include <span>

#include "qkm/backend.hpp"

namespace qkm {

struct DeciderParams {
    uint64_t length = 0;       // m
    uint64_t space_size = 0;   // padded to the next power of two
    double beta = 0.0;
    double alpha = 0.0;
    uint64_t m_points = 0;     // requested counting points M
    double threshold = 0.0;    // (1 + eps / 2) * k
    int64_t k = 0;
    double epsilon = 0.0;

    static DeciderParams make(uint64_t length, int64_t k, double epsilon);
};

// beta = sqrt(1 + 3 eps / 2) - sqrt(1 + eps); satisfies
// beta^2 + 2 beta sqrt(1 + eps) = eps / 2 and 1 / beta <= 6 / eps.
double compute_beta(double epsilon);

// ceil(alpha * sqrt(space_size / k)) with a certified ceiling.
uint64_t compute_m_points(uint64_t space_size, int64_t k, double epsilon);

// Decides delta(X, Y) <= k versus > (1 + eps) * k, each side right with
// probability >= 9/10. Short-circuits to yes when k >= m. Charges the
// backend's effective M oracle rounds per counting run.
bool approx_bounded_hamming_decider(std::span<const uint8_t> x, std::span<const uint8_t> y,
                                    int64_t k, double epsilon, const Backend& backend, Rng& rng,
                                    QueryCounter& counter);

}  // namespace qkm
