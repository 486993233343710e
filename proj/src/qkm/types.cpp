#include "qkm/types.hpp"

#include <cmath>

namespace qkm {

MatchInstance validate_instance(std::vector<uint8_t> text, std::vector<uint8_t> pattern, int64_t k,
                                double epsilon) {
    if (pattern.empty()) raise(ErrorCode::empty_pattern, "pattern must be non-empty");
    if (pattern.size() > text.size())
        raise(ErrorCode::pattern_longer_than_text,
              "pattern length " + std::to_string(pattern.size()) + " exceeds text length " +
                  std::to_string(text.size()));
    if (k <= 0) raise(ErrorCode::non_positive_k, "k must be >= 1, got " + std::to_string(k));
    if (!(epsilon > 0.0) || !(epsilon <= 1.0) || !std::isfinite(epsilon))
        raise(ErrorCode::epsilon_out_of_range, "epsilon must lie in (0, 1]");
    // keeps the exact integer threshold arithmetic comfortably in range
    if (k > (int64_t{1} << 40))
        raise(ErrorCode::invalid_argument, "k too large for exact threshold arithmetic");
    return MatchInstance(std::move(text), std::move(pattern), k, epsilon);
}

}  // namespace qkm
