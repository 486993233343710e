#include "qkm/reference.hpp"

#include <cmath>

namespace qkm {

uint64_t hamming_distance(std::span<const uint8_t> a, std::span<const uint8_t> b) {
    if (a.size() != b.size()) return infinite_distance;
    uint64_t count = 0;
    for (size_t i = 0; i < a.size(); ++i) count += (a[i] != b[i]) ? 1 : 0;
    return count;
}

TrichotomyLabel classify_position(const MatchInstance& inst, uint64_t j, uint64_t search_space) {
    if (j >= search_space) raise(ErrorCode::invalid_argument, "position outside search space");
    if (j > inst.n() - inst.m()) return TrichotomyLabel::negative;
    uint64_t dist = hamming_distance(inst.window(j), inst.pattern());
    if (dist <= static_cast<uint64_t>(inst.k())) return TrichotomyLabel::positive;
    if (exceeds_relaxed_threshold(dist, inst.k(), inst.epsilon())) return TrichotomyLabel::negative;
    return TrichotomyLabel::neutral;
}

std::optional<uint64_t> brute_force_kmismatch(const MatchInstance& inst) {
    for (uint64_t j = 0; j + inst.m() <= inst.n(); ++j) {
        if (hamming_distance(inst.window(j), inst.pattern()) <= static_cast<uint64_t>(inst.k()))
            return j;
    }
    return std::nullopt;
}

std::vector<uint64_t> window_distances(const MatchInstance& inst) {
    std::vector<uint64_t> dists;
    dists.reserve(inst.n() - inst.m() + 1);
    for (uint64_t j = 0; j + inst.m() <= inst.n(); ++j)
        dists.push_back(hamming_distance(inst.window(j), inst.pattern()));
    return dists;
}

double counting_error_bound(uint64_t space_size, uint64_t t, uint64_t m_points, uint64_t k_conf) {
    if (!is_pow2(space_size)) raise(ErrorCode::invalid_argument, "space size must be a power of two");
    if (t > space_size) raise(ErrorCode::invalid_argument, "t exceeds space size");
    if (m_points == 0) raise(ErrorCode::invalid_argument, "m_points must be >= 1");
    if (k_conf <= 1) raise(ErrorCode::invalid_argument, "confidence parameter must exceed 1");
    double n = static_cast<double>(space_size);
    double td = static_cast<double>(t);
    double m = static_cast<double>(m_points);
    double kc = static_cast<double>(k_conf);
    return 2.0 * M_PI * kc * std::sqrt(td * (n - td)) / m + M_PI * M_PI * kc * kc * n / (m * m);
}

}  // namespace qkm
