// Search over a bounded-error decider with neutral inputs. The decider
// answers promise labels (definitely-yes / definitely-no) correctly with
// probability >= 2/3 and may do anything on neutral labels. Majority-vote
// boosting drives the promise error below N^-lambda, and the amplified
// search over the boosted sampler finds a yes-or-neutral label with
// probability >= 2/3 whenever a yes label exists, while reporting a
// definite-no label with probability <= 1/3.
#pragma once

#include <cstdint>
#include <memory>

#include "qkm/qsearch.hpp"

namespace qkm {

// One round of decision on a label. run() performs one measured invocation
// and charges its actual cost; yes_probability() is the exact Bernoulli
// parameter of run() for that label, which the simulation uses to stand in
// for coherent applications; coherent_cost_rounds() is the fixed oracle
// cost charged per as-if coherent invocation.
class BoundedErrorDecider {
  public:
    virtual ~BoundedErrorDecider() = default;
    virtual bool run(uint64_t label, Rng& rng, QueryCounter& counter) const = 0;
    virtual double yes_probability(uint64_t label) const = 0;
    virtual uint64_t coherent_cost_rounds() const = 0;
};

struct BoostConfig {
    uint32_t lambda = 4;      // boosted promise error is N^-lambda
    uint64_t gamma = 1;       // application bound constant for this search space
    uint64_t repetitions = 1; // majority-vote size r = ceil(18 * lambda * ln N)
    uint64_t search_space = 2;

    // Derives (gamma, lambda, r) for a search space: gamma from the
    // worst-case application count at this N, lambda the smallest integer
    // >= 4 with 4 * gamma * 2^(1/2 - lambda) <= 1/9, then r from lambda.
    static BoostConfig for_search_space(uint64_t search_space, const QSearchConfig& qcfg = {});

    void validate() const;
};

uint64_t boost_repetitions(uint32_t lambda, uint64_t search_space);

// Majority vote over exactly `repetitions` runs; ties resolve to no.
bool majority_vote(const BoundedErrorDecider& decider, uint64_t repetitions, uint64_t label,
                   Rng& rng, QueryCounter& counter);

// Majority vote over r = ceil(18 * lambda * ln N) independent runs of the
// decider on one label. Promise-label error drops to exp(-r/18) <= N^-lambda.
bool success_boosting(const BoundedErrorDecider& decider, uint32_t lambda, uint64_t label,
                      uint64_t search_space, Rng& rng, QueryCounter& counter);

// Samples a uniform label and runs the boosted decider on it. Swapping the
// uniform sampler for an arbitrary preparation would generalize the
// amplified-search guarantee beyond plain search; only the uniform sampler
// is provided here.
GroverOutcome weak_search_auxiliary(const BoundedErrorDecider& decider, uint64_t search_space,
                                    const BoostConfig& cfg, Rng& rng, QueryCounter& counter);

struct WeakSearchResult {
    uint64_t label = 0;
    bool flag = false;
    uint64_t attempts = 0;  // amplified searches consumed (1 or 2)
};

// Two attempts of the amplified search over the boosted auxiliary with
// budget T = 2N; first flagged outcome wins, otherwise (0, 0).
WeakSearchResult weak_search(const BoundedErrorDecider& decider, uint64_t search_space,
                             const BoostConfig& cfg, const QSearchConfig& qcfg, Rng& rng,
                             QueryCounter& counter);

// Same loop against a prebuilt auxiliary target (reusable across trials).
// Asserts the decider-call budget 2 * worst_case_applications(N) * r.
WeakSearchResult weak_search_with_target(const SearchTarget& target, uint64_t search_space,
                                         const BoostConfig& cfg, const QSearchConfig& qcfg,
                                         Rng& rng, QueryCounter& counter);

// The amplified-search view of the boosted auxiliary; exposed so the
// matcher and tests can reuse the exact-composition target.
std::unique_ptr<SearchTarget> make_auxiliary_target(const BoundedErrorDecider& decider,
                                                    uint64_t search_space, const BoostConfig& cfg);

}  // namespace qkm
