// Validated problem instances: text, pattern, mismatch threshold k, and the
// relaxation parameter eps in (0, 1]. Instances are immutable once built and
// safe to share across threads.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qkm/common.hpp"

namespace qkm {

class MatchInstance {
  public:
    const std::vector<uint8_t>& text() const { return text_; }
    const std::vector<uint8_t>& pattern() const { return pattern_; }
    size_t n() const { return text_.size(); }
    size_t m() const { return pattern_.size(); }
    int64_t k() const { return k_; }
    double epsilon() const { return epsilon_; }

    std::span<const uint8_t> window(size_t j) const {
        return std::span<const uint8_t>(text_).subspan(j, pattern_.size());
    }

  private:
    friend MatchInstance validate_instance(std::vector<uint8_t> text, std::vector<uint8_t> pattern,
                                           int64_t k, double epsilon);

    MatchInstance(std::vector<uint8_t> text, std::vector<uint8_t> pattern, int64_t k, double epsilon)
        : text_(std::move(text)), pattern_(std::move(pattern)), k_(k), epsilon_(epsilon) {}

    std::vector<uint8_t> text_;
    std::vector<uint8_t> pattern_;
    int64_t k_;
    double epsilon_;
};

// Validates and constructs; never clamps. Throws Error with the specific
// code on any violated precondition.
MatchInstance validate_instance(std::vector<uint8_t> text, std::vector<uint8_t> pattern, int64_t k,
                                double epsilon);

}  // namespace qkm
