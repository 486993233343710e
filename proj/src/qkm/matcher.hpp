// End-to-end approximate k-mismatch matching: a per-position bounded-error
// decider built on the Hamming gap decider, searched with the weak-search
// machinery over the padded position space. Also the Monte Carlo harness:
// planted-instance generation, seeded trial batches with exact classical
// rechecks, and the query-scaling bench sweep.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qkm/decider.hpp"
#include "qkm/reference.hpp"
#include "qkm/weak_search.hpp"

namespace qkm {

// Position decider over labels [0..N): out-of-range positions answer no for
// free; in-range positions run the gap decider on window vs pattern.
// Immutable after construction and safe to share across trials; the
// construction precomputes exact per-position yes probabilities.
class PositionDecider final : public BoundedErrorDecider {
  public:
    PositionDecider(const MatchInstance& inst, const Backend& backend);

    uint64_t search_space() const { return search_space_; }
    const DeciderParams& params() const { return params_; }

    bool run(uint64_t label, Rng& rng, QueryCounter& counter) const override;
    double yes_probability(uint64_t label) const override;
    uint64_t coherent_cost_rounds() const override { return coherent_rounds_; }

  private:
    const MatchInstance& inst_;
    Backend backend_;
    DeciderParams params_;
    uint64_t last_position_;   // n - m
    uint64_t search_space_;
    uint64_t coherent_rounds_;
    std::vector<double> yes_prob_;  // one entry per label
};

struct MatchReport {
    uint64_t position = 0;
    bool flag = false;
    uint64_t oracle_rounds = 0;
    uint64_t decider_calls = 0;
    BackendKind backend = BackendKind::analytic;
    RngSeed seed;
    double wall_ms = 0.0;  // informational; never serialized
    std::optional<uint64_t> recheck_distance;  // exact, present iff flag
};

// Shared immutable state for repeated trials on one instance: the position
// decider, boost configuration, and the amplification target.
class MatchSession {
  public:
    MatchSession(const MatchInstance& inst, const Backend& backend,
                 const QSearchConfig& qcfg = {});

    MatchReport run(const RngSeed& seed) const;

    const PositionDecider& decider() const { return *decider_; }
    const BoostConfig& boost_config() const { return boost_cfg_; }
    uint64_t search_space() const { return decider_->search_space(); }

  private:
    const MatchInstance& inst_;
    Backend backend_;
    QSearchConfig qcfg_;
    std::unique_ptr<PositionDecider> decider_;
    BoostConfig boost_cfg_;
    std::unique_ptr<SearchTarget> target_;
};

// One-shot convenience wrapper around MatchSession.
MatchReport approx_bounded_dist_matching(const MatchInstance& inst, const Backend& backend,
                                         const RngSeed& seed, const QSearchConfig& qcfg = {});

// Single position query, one measured decider run.
bool position_decider(const MatchInstance& inst, uint64_t position, const Backend& backend,
                      Rng& rng, QueryCounter& counter);

struct PlantSpec {
    enum class Kind { random, match_at, none_within };

    Kind kind = Kind::random;
    uint64_t distance = 0;
    std::optional<uint64_t> position;

    // Accepts "random", "match-at-distance-D", "match-at-distance-D@J",
    // "none-above-distance-D" (no window within distance D).
    static PlantSpec parse(const std::string& text);
    std::string to_string() const;
};

struct GeneratedInstance {
    MatchInstance instance;
    PlantSpec plant;
    RngSeed seed;
    uint64_t verified_min_distance = 0;  // exact minimum over all windows
};

// Random instance with the requested planted structure, verified by an
// exhaustive distance scan before returning.
GeneratedInstance generate_instance(uint64_t n, uint64_t m, int64_t k, double epsilon,
                                    const PlantSpec& plant, const RngSeed& seed);

// Equal-length random pair at exactly the requested distance.
std::pair<std::vector<uint8_t>, std::vector<uint8_t>> pair_at_distance(uint64_t length,
                                                                       uint64_t distance,
                                                                       const RngSeed& seed);

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

// Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(uint64_t successes, uint64_t trials, double z);

inline constexpr double wilson_z_99 = 2.5758293035489004;  // two-sided 99%

struct TrialAggregate {
    uint64_t trials = 0;
    uint64_t success_count = 0;
    uint64_t flagged_count = 0;
    uint64_t false_positive_count = 0;  // flag set but position is a definite no
    double mean_queries = 0.0;
    WilsonInterval success_ci;  // 99% Wilson
};

struct TrialSet {
    std::vector<MatchReport> reports;
    TrialAggregate aggregate;
};

// Independent seeded trials (trial i uses child stream i of the master
// seed), judged against the exact oracles. Identical seeds give identical
// results for any thread count.
TrialSet run_match_trials(const MatchInstance& inst, const Backend& backend,
                          const RngSeed& master, uint64_t trials, uint32_t threads = 1,
                          const QSearchConfig& qcfg = {});

struct BenchRow {
    uint64_t n = 0;
    uint64_t m = 0;
    int64_t k = 0;
    double epsilon = 0.0;
    uint64_t trials = 0;
    double success_rate = 0.0;
    double false_positive_rate = 0.0;
    double mean_queries = 0.0;
    double normalized_queries = 0.0;  // mean / (eps^-1 sqrt(m n / k))
};

struct BenchGrid {
    std::vector<uint64_t> n;
    std::vector<uint64_t> m;
    std::vector<int64_t> k;
    std::vector<double> epsilon;
};

// Cartesian sweep; each point gets a fresh planted-match instance (distance
// exactly k) and its own derived seed stream.
std::vector<BenchRow> bench_sweep(const BenchGrid& grid, uint64_t trials, const Backend& backend,
                                  const RngSeed& master, uint32_t threads = 1,
                                  const QSearchConfig& qcfg = {});

// Canonical serializations; byte-stable for fixed seeds and configs.
std::string report_to_json(const MatchReport& report);
std::string trial_set_to_json(const TrialSet& set);
std::string sidecar_to_json(const GeneratedInstance& gen);
std::string bench_to_csv(const std::vector<BenchRow>& rows);

}  // namespace qkm
