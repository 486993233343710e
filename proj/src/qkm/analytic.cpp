#include "qkm/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qkm/common.hpp"

namespace qkm {

double phase_estimation_kernel(double delta, uint64_t m_points) {
    double reduced = std::remainder(delta, 1.0);
    if (reduced == 0.0) return 1.0;
    double m = static_cast<double>(m_points);
    double denom = m * m * sin_pi_sq(reduced);
    return sin_pi_sq(m * delta) / denom;
}

std::vector<double> qae_outcome_distribution(uint64_t space_size, uint64_t t, uint64_t m_points) {
    if (t > space_size) raise(ErrorCode::invalid_argument, "t exceeds space size");
    if (m_points < 2) raise(ErrorCode::invalid_argument, "m_points must be >= 2");
    double fraction = static_cast<double>(t) / static_cast<double>(space_size);
    double omega = std::asin(std::sqrt(fraction)) / M_PI;  // eigenphase, in [0, 1/2]
    double m = static_cast<double>(m_points);
    std::vector<double> prob(m_points);
    for (uint64_t y = 0; y < m_points; ++y) {
        double pos = static_cast<double>(y) / m;
        prob[y] = 0.5 * (phase_estimation_kernel(omega - pos, m_points) +
                         phase_estimation_kernel(omega + pos, m_points));
    }
    return prob;
}

double grover_success_probability(double initial_success, uint64_t iterations) {
    if (initial_success <= 0.0) return 0.0;
    if (initial_success >= 1.0) return 1.0;
    double theta = std::asin(std::sqrt(initial_success));
    double s = std::sin(static_cast<double>(2 * iterations + 1) * theta);
    return s * s;
}

namespace {

// Index of the u-th (0-based) label not present in the sorted marked list.
uint64_t nth_unmarked(uint64_t space_size, const std::vector<uint64_t>& marked, uint64_t u) {
    uint64_t lo = 0, hi = space_size - 1;
    // count of unmarked <= x is x + 1 - rank(x); binary search the smallest
    // x with count >= u + 1
    while (lo < hi) {
        uint64_t mid = lo + (hi - lo) / 2;
        uint64_t rank = static_cast<uint64_t>(
            std::upper_bound(marked.begin(), marked.end(), mid) - marked.begin());
        uint64_t unmarked = mid + 1 - rank;
        if (unmarked >= u + 1)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

}  // namespace

GroverOutcome analytic_grover_sample(uint64_t space_size, const std::vector<uint64_t>& marked,
                                     uint64_t iterations, Rng& rng, QueryCounter& counter) {
    if (space_size == 0) raise(ErrorCode::invalid_argument, "empty search space");
    uint64_t t = marked.size();
    if (t > space_size) raise(ErrorCode::invalid_argument, "marked set exceeds space");
    counter.add_rounds(iterations);
    counter.add_a_applications(1 + 2 * iterations);
    double a = static_cast<double>(t) / static_cast<double>(space_size);
    bool good = rng.bernoulli(grover_success_probability(a, iterations));
    GroverOutcome out;
    if (good) {
        out.label = marked[rng.uniform_index(t)];
        out.flag = true;
    } else {
        out.label = nth_unmarked(space_size, marked, rng.uniform_index(space_size - t));
        out.flag = false;
    }
    // flag mirrors actual membership by construction; keep the classical
    // recheck anyway, it is the contract
    bool member = std::binary_search(marked.begin(), marked.end(), out.label);
    if (member != out.flag) throw std::logic_error("sampled flag contradicts membership");
    return out;
}

CountSampler::CountSampler(uint64_t space_size, uint64_t t, uint64_t m_points)
    : space_size_(space_size),
      m_points_(m_points),
      prob_(qae_outcome_distribution(space_size, t, m_points)) {
    cdf_.resize(prob_.size());
    double acc = 0.0;
    for (size_t y = 0; y < prob_.size(); ++y) {
        acc += prob_[y];
        cdf_[y] = acc;
    }
}

uint64_t CountSampler::sample_phase(Rng& rng) const {
    double u = rng.uniform_double() * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<uint64_t>(it - cdf_.begin());
}

double CountSampler::estimate_for_phase(uint64_t y) const {
    return static_cast<double>(space_size_) *
           sin_pi_sq(static_cast<double>(y) / static_cast<double>(m_points_));
}

CountEstimate CountSampler::sample(Rng& rng, QueryCounter& counter) const {
    counter.add_rounds(m_points_);
    return CountEstimate{estimate_for_phase(sample_phase(rng)), m_points_};
}

double CountSampler::yes_probability(double threshold) const {
    double p = 0.0;
    for (uint64_t y = 0; y < m_points_; ++y)
        if (estimate_for_phase(y) < threshold) p += prob_[y];
    return std::min(p, 1.0);
}

CountEstimate analytic_count_sample(uint64_t space_size, uint64_t t, uint64_t m_points, Rng& rng,
                                    QueryCounter& counter) {
    return CountSampler(space_size, t, m_points).sample(rng, counter);
}

MajorityTail::MajorityTail(uint64_t repetitions) : repetitions_(repetitions) {
    if (repetitions == 0) raise(ErrorCode::invalid_argument, "zero repetitions");
    log_factorial_.resize(repetitions + 1);
    log_factorial_[0] = 0.0;
    for (uint64_t i = 1; i <= repetitions; ++i)
        log_factorial_[i] = log_factorial_[i - 1] + std::log(static_cast<double>(i));
}

double MajorityTail::operator()(double p) const {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    uint64_t first = repetitions_ / 2 + 1;  // smallest strict-majority count
    double r = static_cast<double>(repetitions_);
    double log_p = std::log(p);
    double log_q = std::log1p(-p);
    // streaming log-sum-exp over i in [first..r]
    double max_log = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (uint64_t i = first; i <= repetitions_; ++i) {
        double di = static_cast<double>(i);
        double lt = log_factorial_[repetitions_] - log_factorial_[i] -
                    log_factorial_[repetitions_ - i] + di * log_p + (r - di) * log_q;
        if (lt > max_log) {
            sum = sum * std::exp(max_log - lt) + 1.0;
            max_log = lt;
        } else {
            sum += std::exp(lt - max_log);
        }
    }
    double tail = std::exp(max_log) * sum;
    return std::clamp(tail, 0.0, 1.0);
}

double binomial_majority_tail(uint64_t repetitions, double p) {
    return MajorityTail(repetitions)(p);
}

}  // namespace qkm
