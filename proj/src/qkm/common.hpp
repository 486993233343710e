// Shared error codes, exceptions, and numeric helpers used across the
// library: power-of-two utilities, certified ceilings for schedule
// constants, and the exact threshold comparisons the classical ground
// truth relies on.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qkm {

enum class ErrorCode : int {
    none = 0,
    empty_pattern,
    pattern_longer_than_text,
    non_positive_k,
    epsilon_out_of_range,
    length_mismatch,
    state_too_large,
    unknown_register,
    infeasible_plant,
    invalid_argument,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline constexpr uint64_t infinite_distance = std::numeric_limits<uint64_t>::max();

// Smallest power of two >= x (x >= 1).
inline uint64_t next_pow2(uint64_t x) {
    uint64_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

inline bool is_pow2(uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline uint32_t log2_exact(uint64_t pow2) {
    uint32_t b = 0;
    while ((uint64_t{1} << b) < pow2) ++b;
    return b;
}

// sin^2(pi * x), with the argument reduced so values near integer x stay
// accurate. std::remainder is exact, so the reduction loses nothing.
inline double sin_pi_sq(double x) {
    double r = std::remainder(x, 1.0);  // in [-0.5, 0.5]
    double s = std::sin(M_PI * r);
    return s * s;
}

// ceil(base^power) where the ceiling must be trustworthy. Tracks a running
// relative error bound for the repeated multiplication; if the ceiling is
// ambiguous within the bound, widens to the upper candidate (only ever
// overestimates, which is safe for every schedule that consumes it).
inline uint64_t certified_ceil_pow(double base, uint64_t power) {
    if (power == 0) return 1;
    long double v = 1.0L;
    for (uint64_t i = 0; i < power; ++i) v *= static_cast<long double>(base);
    long double rel = static_cast<long double>(power + 2) * std::numeric_limits<long double>::epsilon();
    long double lo = v * (1.0L - rel);
    long double hi = v * (1.0L + rel);
    long double cl = std::ceil(lo);
    long double cu = std::ceil(hi);
    long double pick = (cl == cu) ? cl : cu;
    if (pick < 1.0L) pick = 1.0L;
    return static_cast<uint64_t>(pick);
}

// ceil(value) with an explicit absolute error bound on value, widening to
// the upper candidate on straddle.
inline uint64_t certified_ceil(long double value, long double abs_err) {
    long double cl = std::ceil(value - abs_err);
    long double cu = std::ceil(value + abs_err);
    long double pick = (cl == cu) ? cl : cu;
    if (pick < 0.0L) pick = 0.0L;
    return static_cast<uint64_t>(pick);
}

// Exact test for  distance > (1 + eps) * k  using the binary rational value
// of eps (every finite double is p * 2^e exactly). Integer-boundary cases
// must classify exactly: they define the ground-truth trichotomy.
inline bool exceeds_relaxed_threshold(uint64_t distance, int64_t k, double eps) {
    if (distance == infinite_distance) return true;
    if (k <= 0) raise(ErrorCode::invalid_argument, "k must be positive");
    uint64_t uk = static_cast<uint64_t>(k);
    if (distance <= uk) return false;
    uint64_t d = distance - uk;  // compare d > eps * k
    int exp2 = 0;
    double frac = std::frexp(eps, &exp2);  // eps = frac * 2^exp2, frac in [0.5, 1)
    auto mant = static_cast<unsigned __int128>(std::ldexp(frac, 53));
    int shift = 53 - exp2;  // d * 2^shift > mant * k
    if (shift < 0) raise(ErrorCode::invalid_argument, "eps too large for exact comparison");
    unsigned __int128 rhs = mant * static_cast<unsigned __int128>(uk);  // < 2^117
    unsigned __int128 lhs = static_cast<unsigned __int128>(d);
    if (shift >= 117 || (lhs >> (117 - shift)) != 0) return true;  // lhs >= 2^117 > rhs
    lhs <<= shift;
    return lhs > rhs;
}

}  // namespace qkm
