#include "qkm/decider.hpp"

#include <cmath>

#include "qkm/reference.hpp"

namespace qkm {

double compute_beta(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon <= 1.0))
        raise(ErrorCode::epsilon_out_of_range, "epsilon must lie in (0, 1]");
    return std::sqrt(1.0 + 1.5 * epsilon) - std::sqrt(1.0 + epsilon);
}

uint64_t compute_m_points(uint64_t space_size, int64_t k, double epsilon) {
    if (!is_pow2(space_size)) raise(ErrorCode::invalid_argument, "space size must be a power of two");
    if (k < 1) raise(ErrorCode::non_positive_k, "k must be >= 1");
    long double eps = epsilon;
    long double beta = std::sqrt(1.0L + 1.5L * eps) - std::sqrt(1.0L + eps);
    long double alpha = 6.0L * static_cast<long double>(M_PI) / beta;
    long double value = alpha * std::sqrt(static_cast<long double>(space_size) /
                                          static_cast<long double>(k));
    if (!(value < 0x1p62L))
        raise(ErrorCode::invalid_argument, "point count overflows; epsilon too small");
    // the long-double evaluation is good to ~1e-17 relative; widen on straddle
    uint64_t m = certified_ceil(value, value * 1e-15L);
    return m < 2 ? 2 : m;
}

DeciderParams DeciderParams::make(uint64_t length, int64_t k, double epsilon) {
    if (length == 0) raise(ErrorCode::invalid_argument, "empty strings");
    if (k < 1) raise(ErrorCode::non_positive_k, "k must be >= 1");
    DeciderParams p;
    p.length = length;
    p.space_size = next_pow2(length);
    if (p.space_size < 2) p.space_size = 2;
    p.beta = compute_beta(epsilon);
    p.alpha = 6.0 * M_PI / p.beta;
    p.m_points = compute_m_points(p.space_size, k, epsilon);
    p.threshold = (1.0 + epsilon / 2.0) * static_cast<double>(k);
    p.k = k;
    p.epsilon = epsilon;
    if (!(p.beta > 0.0) ||
        std::fabs(p.beta * p.beta + 2.0 * p.beta * std::sqrt(1.0 + epsilon) - epsilon / 2.0) >
            1e-12)
        throw std::logic_error("gap constant lost its defining identity");
    return p;
}

bool approx_bounded_hamming_decider(std::span<const uint8_t> x, std::span<const uint8_t> y,
                                    int64_t k, double epsilon, const Backend& backend, Rng& rng,
                                    QueryCounter& counter) {
    if (x.size() != y.size())
        raise(ErrorCode::length_mismatch, "strings must have equal length");
    DeciderParams params = DeciderParams::make(x.size(), k, epsilon);
    if (k >= static_cast<int64_t>(x.size())) return true;
    if (backend.kind == BackendKind::exact_statevector) {
        // run the real circuit on the padded predicate
        // F(j) = j < m && x[j] != y[j]; it never reads out of range
        BasisPredicate mismatch_at = [x, y](uint64_t j) {
            return j < x.size() && x[j] != y[j];
        };
        CountEstimate estimate =
            sample_amplitude_estimate(params.space_size, mismatch_at,
                                      backend.count_points(params.m_points), rng, counter,
                                      backend.qubit_cap);
        return estimate.t_prime < params.threshold;
    }
    // the analytic backend consumes the marked count directly; computing it
    // classically is a simulation device, the query charge stays M
    uint64_t mismatches = hamming_distance(x, y);
    CountEstimate estimate =
        backend.count_sample(params.space_size, mismatches, params.m_points, rng, counter);
    return estimate.t_prime < params.threshold;
}

}  // namespace qkm
