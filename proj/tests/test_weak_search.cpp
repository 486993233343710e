#include <doctest.h>

#include <cmath>
#include <map>

#include "qkm/weak_search.hpp"

using namespace qkm;

namespace {

// Test double honoring the bounded-error promise exactly: each label has a
// fixed yes-probability; promise labels use 2/3-style values, neutral
// labels anything the test wants.
class PromiseDecider final : public BoundedErrorDecider {
  public:
    PromiseDecider(uint64_t space, double default_yes) : yes_(space, default_yes) {}

    void set(uint64_t label, double yes) { yes_[label] = yes; }

    bool run(uint64_t label, Rng& rng, QueryCounter& counter) const override {
        counter.add_rounds(1);
        return rng.bernoulli(yes_[label]);
    }

    double yes_probability(uint64_t label) const override { return yes_[label]; }

    uint64_t coherent_cost_rounds() const override { return 1; }

  private:
    std::vector<double> yes_;
};

}  // namespace

TEST_CASE("boost repetition counts satisfy the error target") {
    CHECK(boost_repetitions(4, 8) == 150);
    CHECK(std::exp(-150.0 / 18.0) <= std::pow(8.0, -4.0));
    // the Hoeffding bound holds for every configuration produced
    for (uint64_t space : {2ull, 16ull, 1024ull}) {
        for (uint32_t lambda : {4u, 10u, 15u}) {
            uint64_t r = boost_repetitions(lambda, space);
            CHECK(std::exp(-static_cast<double>(r) / 18.0) <=
                  std::pow(static_cast<double>(space), -static_cast<double>(lambda)));
        }
    }
}

TEST_CASE("boost config derives consistent constants") {
    BoostConfig cfg = BoostConfig::for_search_space(1024);
    CHECK(cfg.lambda >= 4);
    CHECK(4.0 * static_cast<double>(cfg.gamma) * std::exp2(0.5 - static_cast<double>(cfg.lambda)) <=
          1.0 / 9.0);
    // one step smaller would violate the bound (lambda is minimal above 4)
    if (cfg.lambda > 4)
        CHECK(4.0 * static_cast<double>(cfg.gamma) *
                  std::exp2(0.5 - static_cast<double>(cfg.lambda - 1)) >
              1.0 / 9.0);
    CHECK(cfg.repetitions == boost_repetitions(cfg.lambda, 1024));
    CHECK_NOTHROW(cfg.validate());

    BoostConfig broken = cfg;
    broken.repetitions -= 1;
    CHECK_THROWS_AS(broken.validate(), Error);
}

TEST_CASE("a deterministic decider boosts to itself") {
    PromiseDecider decider(8, 0.0);
    decider.set(3, 1.0);
    Rng rng(RngSeed{51, 0});
    QueryCounter counter;
    for (uint64_t label = 0; label < 8; ++label) {
        bool out = success_boosting(decider, 4, label, 8, rng, counter);
        CHECK(out == (label == 3));
    }
    // 8 boosted calls, 150 runs each
    CHECK(counter.decider_calls == 8 * 150);
    CHECK(counter.oracle_rounds == 8 * 150);
}

TEST_CASE("boosting a 2/3 decider stays within twice the target error") {
    // lambda=4, N=16 gives r=200; empirical boosted error over 1e5 calls
    // must stay below 2 * 16^-4
    PromiseDecider decider(16, 2.0 / 3.0);
    Rng rng(RngSeed{52, 0});
    QueryCounter counter;
    const int calls = 100000;
    int errors = 0;
    for (int i = 0; i < calls; ++i)
        if (!success_boosting(decider, 4, 5, 16, rng, counter)) ++errors;
    CHECK(static_cast<double>(errors) / calls <= 2.0 * std::pow(16.0, -4.0));
}

TEST_CASE("the auxiliary samples uniformly and boosts the decider") {
    BoostConfig cfg = BoostConfig::for_search_space(8);

    // all-negative with a perfect decider: never flagged
    PromiseDecider never(8, 0.0);
    Rng rng(RngSeed{53, 0});
    QueryCounter counter;
    for (int i = 0; i < 200; ++i) CHECK_FALSE(weak_search_auxiliary(never, 8, cfg, rng, counter).flag);

    // one perfect positive at label 3: flag rate is the sampling rate 1/8
    PromiseDecider one(8, 0.0);
    one.set(3, 1.0);
    int flagged = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        auto out = weak_search_auxiliary(one, 8, cfg, rng, counter);
        CHECK(out.label < 8);
        if (out.flag) {
            CHECK(out.label == 3);
            ++flagged;
        }
    }
    CHECK(std::fabs(static_cast<double>(flagged) / trials - 0.125) < 0.011);  // 3 sigma and slack
}

TEST_CASE("the auxiliary keeps the promised yes rate with a noisy decider") {
    BoostConfig cfg = BoostConfig::for_search_space(8);
    PromiseDecider noisy(8, 1.0 / 3.0);  // negatives err at the maximum rate
    noisy.set(3, 2.0 / 3.0);             // one positive at the minimum rate
    Rng rng(RngSeed{54, 0});
    QueryCounter counter;
    int flagged = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i)
        if (weak_search_auxiliary(noisy, 8, cfg, rng, counter).flag) ++flagged;
    CHECK(static_cast<double>(flagged) / trials >= 1.0 / 16.0);
}

TEST_CASE("weak search finds the positive label at the promised rate") {
    BoostConfig cfg = BoostConfig::for_search_space(16);
    QSearchConfig qcfg;
    PromiseDecider decider(16, 0.0);
    decider.set(5, 1.0);
    int hits = 0;
    const int trials = 500;
    for (int s = 0; s < trials; ++s) {
        Rng rng(derive_stream(RngSeed{55, 0}, s));
        QueryCounter counter;
        WeakSearchResult res = weak_search(decider, 16, cfg, qcfg, rng, counter);
        if (res.flag && res.label == 5) ++hits;
        // query budget: decider invocations within 2 * W(N) * r
        CHECK(counter.decider_calls <=
              2 * worst_case_applications(qcfg, 16) * cfg.repetitions);
    }
    CHECK(static_cast<double>(hits) / trials >= 2.0 / 3.0);
}

TEST_CASE("weak search over an all-negative space reports nothing") {
    BoostConfig cfg = BoostConfig::for_search_space(16);
    QSearchConfig qcfg;
    PromiseDecider decider(16, 1.0 / 3.0);  // worst allowed negative noise
    int flagged = 0;
    const int trials = 500;
    for (int s = 0; s < trials; ++s) {
        Rng rng(derive_stream(RngSeed{56, 0}, s));
        QueryCounter counter;
        if (weak_search(decider, 16, cfg, qcfg, rng, counter).flag) ++flagged;
    }
    CHECK(static_cast<double>(flagged) / trials <= 1.0 / 3.0);
}

TEST_CASE("adversarial neutrals cannot push the output onto negatives") {
    BoostConfig cfg = BoostConfig::for_search_space(16);
    QSearchConfig qcfg;
    PromiseDecider decider(16, 1.0 / 3.0);
    decider.set(5, 2.0 / 3.0);  // positive
    decider.set(6, 1.0);        // neutral answering yes every time
    std::map<uint64_t, int> flagged_labels;
    int flagged = 0, flagged_negative = 0;
    const int trials = 500;
    for (int s = 0; s < trials; ++s) {
        Rng rng(derive_stream(RngSeed{57, 0}, s));
        QueryCounter counter;
        WeakSearchResult res = weak_search(decider, 16, cfg, qcfg, rng, counter);
        if (res.flag) {
            ++flagged;
            flagged_labels[res.label] += 1;
            if (res.label != 5 && res.label != 6) ++flagged_negative;
        }
    }
    // flagged outcomes concentrate on the positive and the neutral
    CHECK(static_cast<double>(flagged_labels[5] + flagged_labels[6]) / trials >= 2.0 / 3.0);
    CHECK(static_cast<double>(flagged_negative) / trials <= 1.0 / 3.0 + 0.06);
}

TEST_CASE("the auxiliary target flags exactly the chi_N predicate") {
    BoostConfig cfg = BoostConfig::for_search_space(8);
    PromiseDecider decider(8, 0.0);
    auto target = make_auxiliary_target(decider, 8, cfg);
    CHECK(target->is_good(GroverOutcome{2, true}));
    CHECK_FALSE(target->is_good(GroverOutcome{2, false}));
}

TEST_CASE("amplified sampling reproduces the boosted conditional label law") {
    // per-label yes rates near 1/2 keep the boosted probabilities interior,
    // so both conditional classes carry nontrivial weights to compare against
    const uint64_t space = 8;
    BoostConfig cfg = BoostConfig::for_search_space(space);
    PromiseDecider decider(space, 0.5);
    std::vector<double> raw{0.45, 0.47, 0.49, 0.50, 0.51, 0.53, 0.55, 0.58};
    for (uint64_t j = 0; j < space; ++j) decider.set(j, raw[j]);
    auto target = make_auxiliary_target(decider, space, cfg);

    std::vector<double> boosted(space);
    MajorityTail tail(cfg.repetitions);
    double success = 0.0;
    for (uint64_t j = 0; j < space; ++j) {
        boosted[j] = tail(raw[j]);
        success += boosted[j] / static_cast<double>(space);
    }

    const uint64_t iterations = 2;
    const int samples = 20000;
    Rng rng(RngSeed{59, 0});
    QueryCounter counter;
    std::vector<int> good_counts(space, 0), bad_counts(space, 0);
    int good_total = 0;
    for (int i = 0; i < samples; ++i) {
        GroverOutcome out = target->sample_grover(iterations, rng, counter);
        if (out.flag) {
            ++good_total;
            ++good_counts[out.label];
        } else {
            ++bad_counts[out.label];
        }
    }

    // flag rate follows the rotation law for the aggregate success amplitude
    double expect_good = grover_success_probability(success, iterations);
    double sigma = std::sqrt(expect_good * (1 - expect_good) / samples);
    CHECK(std::fabs(static_cast<double>(good_total) / samples - expect_good) <= 4 * sigma);

    // conditional label frequencies track the boosted weights, both classes
    double good_mass = success * space;
    double bad_mass = static_cast<double>(space) - good_mass;
    for (uint64_t j = 0; j < space; ++j) {
        double pg = boosted[j] / good_mass;
        double sg = std::sqrt(pg * (1 - pg) / good_total);
        CHECK(std::fabs(static_cast<double>(good_counts[j]) / good_total - pg) <=
              4 * sg + 0.01);
        int bad_total = samples - good_total;
        double pb = (1.0 - boosted[j]) / bad_mass;
        double sb = std::sqrt(pb * (1 - pb) / bad_total);
        CHECK(std::fabs(static_cast<double>(bad_counts[j]) / bad_total - pb) <=
              4 * sb + 0.01);
    }
}

TEST_CASE("boost config from a mismatched space is rejected") {
    BoostConfig cfg = BoostConfig::for_search_space(8);
    PromiseDecider decider(16, 0.0);
    Rng rng(RngSeed{58, 0});
    QueryCounter counter;
    CHECK_THROWS_AS((void)weak_search_auxiliary(decider, 16, cfg, rng, counter), Error);
}
