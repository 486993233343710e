// Closed-form outcome distributions for the quantum subroutines. Sampling
// from these is statistically identical to measuring the simulated circuits
// (the cross-backend equivalence tests pin this down), which makes search
// spaces far beyond the dense-statevector cap reachable. Only exact closed
// forms live here; no Gaussian or other surrogate approximations.
#pragma once

#include <cstdint>
#include <vector>

#include "qkm/rng.hpp"

namespace qkm {

struct CountEstimate {
    double t_prime = 0.0;   // real-valued estimate of the marked count
    uint64_t queries = 0;   // oracle rounds charged for producing it
};

struct GroverOutcome {
    uint64_t label = 0;
    bool flag = false;
};

// Squared Dirichlet kernel |(1/M) sum_x e^{2 pi i delta x}|^2, periodic in
// delta with period 1. This is the single-eigenphase response of M-point
// phase estimation.
double phase_estimation_kernel(double delta, uint64_t m_points);

// Exact distribution of the phase outcome y in [0..M) when estimating the
// amplitude angle for t marked of N items. Both eigenphases +-theta/pi carry
// weight 1/2 regardless of t.
std::vector<double> qae_outcome_distribution(uint64_t space_size, uint64_t t, uint64_t m_points);

// Success probability of j Grover iterations from a uniform start:
// sin^2((2j+1) * asin(sqrt(a))).
double grover_success_probability(double initial_success, uint64_t iterations);

// One Grover measurement over [0..N) with a classically known marked set
// (sorted, duplicate-free). Marked/unmarked classes stay uniform inside.
// Charges `iterations` oracle rounds and 1 + 2*iterations A-applications.
GroverOutcome analytic_grover_sample(uint64_t space_size, const std::vector<uint64_t>& marked,
                                     uint64_t iterations, Rng& rng, QueryCounter& counter);

// Reusable sampler for the counting estimate t' = N sin^2(pi y / M).
// Building one costs O(M); each sample is O(log M).
class CountSampler {
  public:
    CountSampler(uint64_t space_size, uint64_t t, uint64_t m_points);

    uint64_t sample_phase(Rng& rng) const;
    double estimate_for_phase(uint64_t y) const;
    // Draws one estimate and charges the full M oracle rounds.
    CountEstimate sample(Rng& rng, QueryCounter& counter) const;
    // Exact P[t' < threshold]; no sampling involved.
    double yes_probability(double threshold) const;
    const std::vector<double>& distribution() const { return prob_; }
    uint64_t m_points() const { return m_points_; }

  private:
    uint64_t space_size_;
    uint64_t m_points_;
    std::vector<double> prob_;
    std::vector<double> cdf_;
};

CountEstimate analytic_count_sample(uint64_t space_size, uint64_t t, uint64_t m_points, Rng& rng,
                                    QueryCounter& counter);

// P[X > r/2] for X ~ Binomial(r, p): the exact success law of an r-vote
// majority (ties count as failure). Stable for large r via streaming
// log-sum-exp. MajorityTail amortizes the log-factorial table when many
// probabilities share one repetition count.
class MajorityTail {
  public:
    explicit MajorityTail(uint64_t repetitions);
    double operator()(double p) const;

  private:
    uint64_t repetitions_;
    std::vector<double> log_factorial_;  // log(i!) for i in [0..r]
};

double binomial_majority_tail(uint64_t repetitions, double p);

}  // namespace qkm
