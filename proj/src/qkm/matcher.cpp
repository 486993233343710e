#include "qkm/matcher.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include <json.hpp>

namespace qkm {

PositionDecider::PositionDecider(const MatchInstance& inst, const Backend& backend)
    : inst_(inst),
      backend_(backend),
      params_(DeciderParams::make(inst.m(), inst.k(), inst.epsilon())),
      last_position_(inst.n() - inst.m()) {
    search_space_ = next_pow2(last_position_ + 1);
    if (search_space_ < 2) search_space_ = 2;
    bool shortcut = inst_.k() >= static_cast<int64_t>(inst_.m());
    coherent_rounds_ = shortcut ? 0 : backend_.count_points(params_.m_points);

    yes_prob_.assign(search_space_, 0.0);
    if (shortcut) {
        for (uint64_t j = 0; j <= last_position_; ++j) yes_prob_[j] = 1.0;
        return;
    }
    // exact decider yes-probability per distinct window distance
    std::map<uint64_t, double> by_distance;
    for (uint64_t j = 0; j <= last_position_; ++j) {
        uint64_t dist = hamming_distance(inst_.window(j), inst_.pattern());
        auto it = by_distance.find(dist);
        if (it == by_distance.end()) {
            double p = backend_.count_yes_probability(params_.space_size, dist, params_.m_points,
                                                      params_.threshold);
            it = by_distance.emplace(dist, p).first;
        }
        yes_prob_[j] = it->second;
    }
}

bool PositionDecider::run(uint64_t label, Rng& rng, QueryCounter& counter) const {
    if (label >= search_space_) raise(ErrorCode::invalid_argument, "label outside search space");
    if (label > last_position_) return false;  // classical branch, no queries
    if (inst_.k() >= static_cast<int64_t>(inst_.m())) return true;
    counter.add_rounds(coherent_rounds_);
    // one counting run reduced to its exact Bernoulli law; identical in
    // distribution to sampling the estimate and thresholding it
    return rng.bernoulli(yes_prob_[label]);
}

double PositionDecider::yes_probability(uint64_t label) const {
    if (label >= search_space_) raise(ErrorCode::invalid_argument, "label outside search space");
    return yes_prob_[label];
}

MatchSession::MatchSession(const MatchInstance& inst, const Backend& backend,
                           const QSearchConfig& qcfg)
    : inst_(inst),
      backend_(backend),
      qcfg_(qcfg),
      decider_(std::make_unique<PositionDecider>(inst, backend)),
      boost_cfg_(BoostConfig::for_search_space(decider_->search_space(), qcfg)),
      target_(make_auxiliary_target(*decider_, decider_->search_space(), boost_cfg_)) {}

MatchReport MatchSession::run(const RngSeed& seed) const {
    auto start = std::chrono::steady_clock::now();
    Rng rng(seed);
    QueryCounter counter;
    WeakSearchResult found = weak_search_with_target(*target_, decider_->search_space(),
                                                     boost_cfg_, qcfg_, rng, counter);

    MatchReport report;
    report.position = found.label;
    report.flag = found.flag;
    report.oracle_rounds = counter.oracle_rounds;
    report.decider_calls = counter.decider_calls;
    report.backend = backend_.kind;
    report.seed = seed;
    if (report.flag) {
        if (report.position > inst_.n() - inst_.m())
            throw std::logic_error("flagged position outside the valid range");
        report.recheck_distance = hamming_distance(inst_.window(report.position), inst_.pattern());
    }
    auto elapsed = std::chrono::steady_clock::now() - start;
    report.wall_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    return report;
}

MatchReport approx_bounded_dist_matching(const MatchInstance& inst, const Backend& backend,
                                         const RngSeed& seed, const QSearchConfig& qcfg) {
    return MatchSession(inst, backend, qcfg).run(seed);
}

bool position_decider(const MatchInstance& inst, uint64_t position, const Backend& backend,
                      Rng& rng, QueryCounter& counter) {
    if (position > inst.n() - inst.m()) return false;
    return approx_bounded_hamming_decider(inst.window(position), inst.pattern(), inst.k(),
                                          inst.epsilon(), backend, rng, counter);
}

PlantSpec PlantSpec::parse(const std::string& text) {
    PlantSpec spec;
    if (text == "random" || text.empty()) {
        spec.kind = Kind::random;
        return spec;
    }
    auto parse_tail = [&](const std::string& tail, bool allow_at) {
        size_t at = tail.find('@');
        std::string dist_part = at == std::string::npos ? tail : tail.substr(0, at);
        spec.distance = std::stoull(dist_part);
        if (at != std::string::npos) {
            if (!allow_at) raise(ErrorCode::invalid_argument, "plant spec does not take '@'");
            spec.position = std::stoull(tail.substr(at + 1));
        }
    };
    const std::string match_prefix = "match-at-distance-";
    const std::string none_prefix = "none-above-distance-";
    try {
        if (text.rfind(match_prefix, 0) == 0) {
            spec.kind = Kind::match_at;
            parse_tail(text.substr(match_prefix.size()), true);
            return spec;
        }
        if (text.rfind(none_prefix, 0) == 0) {
            spec.kind = Kind::none_within;
            parse_tail(text.substr(none_prefix.size()), false);
            return spec;
        }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    raise(ErrorCode::invalid_argument, "cannot parse plant spec '" + text + "'");
}

std::string PlantSpec::to_string() const {
    switch (kind) {
        case Kind::random:
            return "random";
        case Kind::match_at: {
            std::string s = "match-at-distance-" + std::to_string(distance);
            if (position) s += "@" + std::to_string(*position);
            return s;
        }
        case Kind::none_within:
            return "none-above-distance-" + std::to_string(distance);
    }
    return "random";
}

namespace {

std::vector<uint8_t> random_bytes(Rng& rng, uint64_t len) {
    std::vector<uint8_t> out(len);
    for (auto& b : out) b = rng.byte();
    return out;
}

// Flip exactly `distance` distinct positions of `target` to different bytes.
void flip_positions(Rng& rng, std::vector<uint8_t>& target, uint64_t begin, uint64_t length,
                    uint64_t distance) {
    std::vector<uint64_t> positions(length);
    for (uint64_t i = 0; i < length; ++i) positions[i] = i;
    for (uint64_t i = 0; i < distance; ++i) {  // partial Fisher-Yates
        uint64_t pick = i + rng.uniform_index(length - i);
        std::swap(positions[i], positions[pick]);
    }
    for (uint64_t i = 0; i < distance; ++i) {
        uint8_t& cell = target[begin + positions[i]];
        uint8_t replacement = cell;
        while (replacement == cell) replacement = rng.byte();
        cell = replacement;
    }
}

}  // namespace

GeneratedInstance generate_instance(uint64_t n, uint64_t m, int64_t k, double epsilon,
                                    const PlantSpec& plant, const RngSeed& seed) {
    Rng rng(seed);
    if (m == 0 || m > n) raise(ErrorCode::infeasible_plant, "need 1 <= m <= n");
    switch (plant.kind) {
        case PlantSpec::Kind::random: {
            MatchInstance inst =
                validate_instance(random_bytes(rng, n), random_bytes(rng, m), k, epsilon);
            auto dists = window_distances(inst);
            uint64_t min_dist = *std::min_element(dists.begin(), dists.end());
            return GeneratedInstance{std::move(inst), plant, seed, min_dist};
        }
        case PlantSpec::Kind::match_at: {
            if (plant.distance > m)
                raise(ErrorCode::infeasible_plant, "planted distance exceeds pattern length");
            uint64_t pos = plant.position ? *plant.position : rng.uniform_index(n - m + 1);
            if (pos > n - m) raise(ErrorCode::infeasible_plant, "plant position out of range");
            std::vector<uint8_t> text = random_bytes(rng, n);
            std::vector<uint8_t> pattern = random_bytes(rng, m);
            std::copy(pattern.begin(), pattern.end(), text.begin() + static_cast<int64_t>(pos));
            flip_positions(rng, text, pos, m, plant.distance);
            MatchInstance inst = validate_instance(std::move(text), std::move(pattern), k, epsilon);
            auto dists = window_distances(inst);
            if (dists[pos] != plant.distance)
                throw std::logic_error("planted window verification failed");
            uint64_t min_dist = *std::min_element(dists.begin(), dists.end());
            return GeneratedInstance{std::move(inst), plant, seed, min_dist};
        }
        case PlantSpec::Kind::none_within: {
            if (plant.distance >= m)
                raise(ErrorCode::infeasible_plant,
                      "no window can exceed the pattern length in distance");
            for (int attempt = 0; attempt < 64; ++attempt) {
                MatchInstance inst =
                    validate_instance(random_bytes(rng, n), random_bytes(rng, m), k, epsilon);
                auto dists = window_distances(inst);
                uint64_t min_dist = *std::min_element(dists.begin(), dists.end());
                if (min_dist > plant.distance)
                    return GeneratedInstance{std::move(inst), plant, seed, min_dist};
            }
            raise(ErrorCode::infeasible_plant,
                  "rejection sampling failed to keep every window above the distance");
        }
    }
    raise(ErrorCode::invalid_argument, "unknown plant kind");
}

std::pair<std::vector<uint8_t>, std::vector<uint8_t>> pair_at_distance(uint64_t length,
                                                                       uint64_t distance,
                                                                       const RngSeed& seed) {
    if (distance > length) raise(ErrorCode::infeasible_plant, "distance exceeds length");
    Rng rng(seed);
    std::vector<uint8_t> x = random_bytes(rng, length);
    std::vector<uint8_t> y = x;
    flip_positions(rng, y, 0, length, distance);
    return {std::move(x), std::move(y)};
}

WilsonInterval wilson_interval(uint64_t successes, uint64_t trials, double z) {
    if (trials == 0) return WilsonInterval{0.0, 1.0};
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return WilsonInterval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct GroundTruth {
    bool has_positive = false;
    bool all_negative = true;
};

GroundTruth evaluate_ground_truth(const MatchInstance& inst) {
    GroundTruth truth;
    for (uint64_t dist : window_distances(inst)) {
        if (dist <= static_cast<uint64_t>(inst.k())) truth.has_positive = true;
        if (!exceeds_relaxed_threshold(dist, inst.k(), inst.epsilon())) truth.all_negative = false;
    }
    return truth;
}

bool recheck_accepts(const MatchInstance& inst, const MatchReport& report) {
    if (!report.flag || !report.recheck_distance) return false;
    return !exceeds_relaxed_threshold(*report.recheck_distance, inst.k(), inst.epsilon());
}

TrialAggregate aggregate_reports(const MatchInstance& inst, const std::vector<MatchReport>& reports) {
    GroundTruth truth = evaluate_ground_truth(inst);
    TrialAggregate agg;
    agg.trials = reports.size();
    uint64_t query_sum = 0;
    for (const auto& report : reports) {
        bool accepted = recheck_accepts(inst, report);
        if (report.flag) {
            agg.flagged_count += 1;
            if (!accepted) agg.false_positive_count += 1;
        }
        bool success;
        if (truth.has_positive)
            success = report.flag && accepted;
        else if (truth.all_negative)
            success = !report.flag;
        else
            success = !report.flag || accepted;
        if (success) agg.success_count += 1;
        query_sum += report.oracle_rounds;
    }
    if (agg.trials > 0)
        agg.mean_queries = static_cast<double>(query_sum) / static_cast<double>(agg.trials);
    agg.success_ci = wilson_interval(agg.success_count, agg.trials, wilson_z_99);
    return agg;
}

}  // namespace

TrialSet run_match_trials(const MatchInstance& inst, const Backend& backend,
                          const RngSeed& master, uint64_t trials, uint32_t threads,
                          const QSearchConfig& qcfg) {
    if (trials == 0) raise(ErrorCode::invalid_argument, "need at least one trial");
    MatchSession session(inst, backend, qcfg);
    std::vector<MatchReport> reports(trials);
    uint32_t workers = std::max<uint32_t>(1, threads);
    if (workers == 1) {
        for (uint64_t i = 0; i < trials; ++i) reports[i] = session.run(derive_stream(master, i));
    } else {
        std::vector<std::thread> pool;
        std::atomic<uint64_t> next{0};
        for (uint32_t w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    uint64_t i = next.fetch_add(1);
                    if (i >= trials) return;
                    reports[i] = session.run(derive_stream(master, i));
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    TrialSet set;
    set.aggregate = aggregate_reports(inst, reports);
    set.reports = std::move(reports);
    return set;
}

std::vector<BenchRow> bench_sweep(const BenchGrid& grid, uint64_t trials, const Backend& backend,
                                  const RngSeed& master, uint32_t threads,
                                  const QSearchConfig& qcfg) {
    if (grid.n.empty() || grid.m.empty() || grid.k.empty() || grid.epsilon.empty())
        raise(ErrorCode::invalid_argument, "bench grid must cover every axis");
    std::vector<BenchRow> rows;
    uint64_t point = 0;
    for (uint64_t n : grid.n) {
        for (uint64_t m : grid.m) {
            for (int64_t k : grid.k) {
                for (double eps : grid.epsilon) {
                    RngSeed point_seed = derive_stream(master, point++);
                    PlantSpec plant;
                    plant.kind = PlantSpec::Kind::match_at;
                    plant.distance = static_cast<uint64_t>(k);
                    GeneratedInstance gen =
                        generate_instance(n, m, k, eps, plant, derive_stream(point_seed, 0));
                    TrialSet set = run_match_trials(gen.instance, backend,
                                                    derive_stream(point_seed, 1), trials, threads,
                                                    qcfg);
                    BenchRow row;
                    row.n = n;
                    row.m = m;
                    row.k = k;
                    row.epsilon = eps;
                    row.trials = trials;
                    row.success_rate = static_cast<double>(set.aggregate.success_count) /
                                       static_cast<double>(trials);
                    row.false_positive_rate =
                        static_cast<double>(set.aggregate.false_positive_count) /
                        static_cast<double>(trials);
                    row.mean_queries = set.aggregate.mean_queries;
                    double scale = std::sqrt(static_cast<double>(m) * static_cast<double>(n) /
                                             static_cast<double>(k)) /
                                   eps;
                    row.normalized_queries = row.mean_queries / scale;
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

namespace {

nlohmann::json seed_to_json(const RngSeed& seed) {
    return nlohmann::json{{"master", seed.master_seed}, {"stream", seed.stream_index}};
}

nlohmann::json report_to_json_value(const MatchReport& report) {
    nlohmann::json j{
        {"position", report.position},
        {"flag", report.flag ? 1 : 0},
        {"queries", report.oracle_rounds},
        {"backend", to_string(report.backend)},
        {"seed", seed_to_json(report.seed)},
    };
    if (report.recheck_distance)
        j["recheck_distance"] = *report.recheck_distance;
    else
        j["recheck_distance"] = nullptr;
    return j;
}

}  // namespace

std::string report_to_json(const MatchReport& report) {
    return report_to_json_value(report).dump();
}

std::string trial_set_to_json(const TrialSet& set) {
    nlohmann::json trials = nlohmann::json::array();
    for (const auto& report : set.reports) trials.push_back(report_to_json_value(report));
    const TrialAggregate& agg = set.aggregate;
    nlohmann::json j{
        {"trials", trials},
        {"aggregate",
         {{"trials", agg.trials},
          {"success_count", agg.success_count},
          {"flagged_count", agg.flagged_count},
          {"false_positive_count", agg.false_positive_count},
          {"mean_queries", agg.mean_queries},
          {"success_ci_low", agg.success_ci.low},
          {"success_ci_high", agg.success_ci.high}}},
    };
    return j.dump();
}

std::string sidecar_to_json(const GeneratedInstance& gen) {
    nlohmann::json j{
        {"n", gen.instance.n()},
        {"m", gen.instance.m()},
        {"k", gen.instance.k()},
        {"epsilon", gen.instance.epsilon()},
        {"plant", gen.plant.to_string()},
        {"seed", seed_to_json(gen.seed)},
        {"verified_min_distance", gen.verified_min_distance},
    };
    return j.dump();
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
    std::string out =
        "n,m,k,epsilon,trials,success_rate,false_positive_rate,mean_queries,normalized_queries\n";
    for (const auto& row : rows) {
        nlohmann::json eps = row.epsilon;  // shortest round-trip formatting
        nlohmann::json sr = row.success_rate;
        nlohmann::json fpr = row.false_positive_rate;
        nlohmann::json mq = row.mean_queries;
        nlohmann::json nq = row.normalized_queries;
        out += std::to_string(row.n) + "," + std::to_string(row.m) + "," + std::to_string(row.k) +
               "," + eps.dump() + "," + std::to_string(row.trials) + "," + sr.dump() + "," +
               fpr.dump() + "," + mq.dump() + "," + nq.dump() + "\n";
    }
    return out;
}

}  // namespace qkm
