// Classical brute-force ground truth. Everything the randomized machinery
// reports is judged against these exact oracles: Hamming distance, the
// per-position trichotomy, exhaustive window scans, and the analytic error
// bound of the counting subroutine.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qkm/types.hpp"

namespace qkm {

enum class TrichotomyLabel : int {
    negative = 0,  // out of range, or distance > (1 + eps) * k
    positive = 1,  // distance <= k
    neutral = 2,   // in the gap
};

// Count of differing positions for equal lengths; infinite_distance otherwise.
uint64_t hamming_distance(std::span<const uint8_t> a, std::span<const uint8_t> b);

// Exact label for position j in the padded search space [0..N). Boundary
// comparisons against (1 + eps) * k are exact integer arithmetic on the
// binary rational value of eps.
TrichotomyLabel classify_position(const MatchInstance& inst, uint64_t j, uint64_t search_space);

// Smallest j with distance(text[j..j+m), pattern) <= k, if any.
std::optional<uint64_t> brute_force_kmismatch(const MatchInstance& inst);

// Exact window distances for j in [0..n-m]; O(n*m), desk scale only.
std::vector<uint64_t> window_distances(const MatchInstance& inst);

// Counting error bound: 2*pi*k*sqrt(t(N-t))/M + pi^2*k^2*N/M^2, where k here
// is the counting confidence parameter, not the mismatch threshold.
double counting_error_bound(uint64_t space_size, uint64_t t, uint64_t m_points, uint64_t k_conf);

}  // namespace qkm
