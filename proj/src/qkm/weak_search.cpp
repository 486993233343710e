#include "qkm/weak_search.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qkm {

uint64_t boost_repetitions(uint32_t lambda, uint64_t search_space) {
    if (search_space < 2) raise(ErrorCode::invalid_argument, "search space must be >= 2");
    double r = 18.0 * static_cast<double>(lambda) * std::log(static_cast<double>(search_space));
    return static_cast<uint64_t>(std::ceil(r));
}

BoostConfig BoostConfig::for_search_space(uint64_t search_space, const QSearchConfig& qcfg) {
    BoostConfig cfg;
    cfg.search_space = search_space;
    cfg.gamma = application_bound_gamma(qcfg, search_space);
    uint32_t lambda = 4;
    // smallest lambda with 4 * gamma * 2^(1/2 - lambda) <= 1/9, i.e.
    // 2^lambda >= 36 * sqrt(2) * gamma
    while (4.0 * static_cast<double>(cfg.gamma) * std::exp2(0.5 - static_cast<double>(lambda)) >
           1.0 / 9.0)
        ++lambda;
    cfg.lambda = lambda;
    cfg.repetitions = boost_repetitions(lambda, search_space);
    return cfg;
}

void BoostConfig::validate() const {
    if (lambda < 4) raise(ErrorCode::invalid_argument, "lambda must be >= 4");
    if (4.0 * static_cast<double>(gamma) * std::exp2(0.5 - static_cast<double>(lambda)) >
        1.0 / 9.0)
        raise(ErrorCode::invalid_argument, "lambda too small for gamma");
    if (repetitions < boost_repetitions(lambda, search_space))
        raise(ErrorCode::invalid_argument, "not enough boosting repetitions");
}

bool majority_vote(const BoundedErrorDecider& decider, uint64_t repetitions, uint64_t label,
                   Rng& rng, QueryCounter& counter) {
    uint64_t yes = 0;
    for (uint64_t i = 0; i < repetitions; ++i) {
        counter.add_decider_calls(1);
        if (decider.run(label, rng, counter)) ++yes;
    }
    return yes > repetitions - yes;  // strict majority; ties are a no
}

bool success_boosting(const BoundedErrorDecider& decider, uint32_t lambda, uint64_t label,
                      uint64_t search_space, Rng& rng, QueryCounter& counter) {
    return majority_vote(decider, boost_repetitions(lambda, search_space), label, rng, counter);
}

GroverOutcome weak_search_auxiliary(const BoundedErrorDecider& decider, uint64_t search_space,
                                    const BoostConfig& cfg, Rng& rng, QueryCounter& counter) {
    cfg.validate();
    if (cfg.search_space != search_space)
        raise(ErrorCode::invalid_argument, "boost config built for a different search space");
    uint64_t label = rng.uniform_index(search_space);
    bool flag = majority_vote(decider, cfg.repetitions, label, rng, counter);
    return GroverOutcome{label, flag};
}

namespace {

// The boosted auxiliary as an amplification target. Direct runs execute the
// literal vote; Grover powers sample the exact rotated outcome distribution
// (the boosted yes-probabilities give the success amplitude and both
// conditional label distributions) and charge queries as if every coherent
// application had run.
class AuxiliaryTarget final : public SearchTarget {
  public:
    AuxiliaryTarget(const BoundedErrorDecider& decider, uint64_t search_space,
                    const BoostConfig& cfg)
        : decider_(decider), space_(search_space), cfg_(cfg) {
        cfg_.validate();
        if (cfg_.search_space != space_)
            raise(ErrorCode::invalid_argument, "boost config built for a different search space");
        boosted_yes_.resize(space_);
        good_cdf_.resize(space_);
        bad_cdf_.resize(space_);
        MajorityTail tail(cfg_.repetitions);
        double good_acc = 0.0;
        double bad_acc = 0.0;
        for (uint64_t j = 0; j < space_; ++j) {
            double p = tail(decider_.yes_probability(j));
            boosted_yes_[j] = p;
            good_acc += p;
            bad_acc += 1.0 - p;
            good_cdf_[j] = good_acc;
            bad_cdf_[j] = bad_acc;
        }
        success_ = good_acc / static_cast<double>(space_);
    }

    GroverOutcome sample_direct(Rng& rng, QueryCounter& counter) const override {
        counter.add_a_applications(1);
        uint64_t label = rng.uniform_index(space_);
        bool flag = majority_vote(decider_, cfg_.repetitions, label, rng, counter);
        return GroverOutcome{label, flag};
    }

    GroverOutcome sample_grover(uint64_t iterations, Rng& rng, QueryCounter& counter) const override {
        uint64_t applications = 1 + 2 * iterations;
        counter.add_a_applications(applications);
        // charge what the coherent run would have queried
        counter.add_decider_calls(applications * cfg_.repetitions);
        counter.add_rounds(applications * cfg_.repetitions * decider_.coherent_cost_rounds());
        bool good = rng.bernoulli(grover_success_probability(success_, iterations));
        const std::vector<double>& cdf = good ? good_cdf_ : bad_cdf_;
        double total = cdf.back();
        if (total <= 0.0) {
            // empty class: the opposite class carries all the mass, so this
            // branch is unreachable unless success_ is exactly 0 or 1
            return GroverOutcome{rng.uniform_index(space_), good};
        }
        double u = rng.uniform_double() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        return GroverOutcome{static_cast<uint64_t>(it - cdf.begin()), good};
    }

    bool is_good(const GroverOutcome& outcome) const override { return outcome.flag; }

  private:
    const BoundedErrorDecider& decider_;
    uint64_t space_;
    BoostConfig cfg_;
    std::vector<double> boosted_yes_;
    std::vector<double> good_cdf_;
    std::vector<double> bad_cdf_;
    double success_ = 0.0;
};

}  // namespace

std::unique_ptr<SearchTarget> make_auxiliary_target(const BoundedErrorDecider& decider,
                                                    uint64_t search_space, const BoostConfig& cfg) {
    return std::make_unique<AuxiliaryTarget>(decider, search_space, cfg);
}

WeakSearchResult weak_search_with_target(const SearchTarget& target, uint64_t search_space,
                                         const BoostConfig& cfg, const QSearchConfig& qcfg,
                                         Rng& rng, QueryCounter& counter) {
    if (!is_pow2(search_space) || search_space < 2)
        raise(ErrorCode::invalid_argument, "search space must be a power of two >= 2");
    uint64_t decider_calls_before = counter.decider_calls;
    uint64_t budget =
        2 * worst_case_applications(qcfg, search_space) * cfg.repetitions;  // two attempts
    WeakSearchResult result;
    for (int attempt = 0; attempt < 2; ++attempt) {
        result.attempts += 1;
        QSearchResult qres =
            qsearch_prime(target, 2.0 * static_cast<double>(search_space), qcfg, rng, counter);
        if (qres.found) {
            result.label = qres.outcome.label;
            result.flag = true;
            break;
        }
    }
    if (counter.decider_calls - decider_calls_before > budget)
        throw std::logic_error("weak search exceeded its decider budget");
    return result;
}

WeakSearchResult weak_search(const BoundedErrorDecider& decider, uint64_t search_space,
                             const BoostConfig& cfg, const QSearchConfig& qcfg, Rng& rng,
                             QueryCounter& counter) {
    AuxiliaryTarget target(decider, search_space, cfg);
    return weak_search_with_target(target, search_space, cfg, qcfg, rng, counter);
}

}  // namespace qkm
