#include "qkm/qsearch.hpp"

#include <algorithm>
#include <cmath>

namespace qkm {

void QSearchConfig::validate() const {
    if (!(growth > 1.0) || !(growth < 2.0))
        raise(ErrorCode::invalid_argument, "schedule base must lie in (1, 2)");
    if (min_rounds == 0) raise(ErrorCode::invalid_argument, "round floor must be positive");
    if (!(alpha > 0.0)) raise(ErrorCode::invalid_argument, "alpha must be positive");
}

uint64_t QSearchConfig::cutoff_rounds(double t_bound) const {
    validate();
    if (!(t_bound >= 1.0)) raise(ErrorCode::invalid_argument, "budget T must be >= 1");
    long double arg = 4.0L * static_cast<long double>(alpha) *
                      std::sqrt(static_cast<long double>(t_bound));
    long double v = std::log(arg) / std::log(static_cast<long double>(growth));
    uint64_t from_log = v <= 0.0L ? 0 : certified_ceil(v, std::fabs(v) * 1e-17L + 1e-17L);
    return std::max<uint64_t>(min_rounds, from_log);
}

QSearchResult qsearch_prime(const SearchTarget& target, double t_bound, const QSearchConfig& cfg,
                            Rng& rng, QueryCounter& counter) {
    uint64_t cutoff = cfg.cutoff_rounds(t_bound);
    QSearchResult res;
    uint64_t t = 0;
    for (uint64_t l = 1; l <= cutoff; ++l) {
        uint64_t window = certified_ceil_pow(cfg.growth, l);
        res.rounds_run += 1;
        t += 1;
        GroverOutcome direct = target.sample_direct(rng, counter);
        if (target.is_good(direct)) {  // classical recheck doubles as the gate
            res.outcome = direct;
            res.found = true;
            break;
        }
        uint64_t j = 1 + rng.uniform_index(window);
        t += j;
        GroverOutcome amplified = target.sample_grover(j, rng, counter);
        if (target.is_good(amplified)) {
            res.outcome = amplified;
            res.found = true;
            break;
        }
    }
    res.iterations_used = t;
    return res;
}

uint64_t worst_case_applications_for_budget(const QSearchConfig& cfg, double t_bound) {
    uint64_t cutoff = cfg.cutoff_rounds(t_bound);
    uint64_t total = 0;
    for (uint64_t l = 1; l <= cutoff; ++l) total += 2 + 2 * certified_ceil_pow(cfg.growth, l);
    return total;
}

uint64_t worst_case_applications(const QSearchConfig& cfg, uint64_t search_space) {
    if (search_space < 2) raise(ErrorCode::invalid_argument, "search space must be >= 2");
    return worst_case_applications_for_budget(cfg, 2.0 * static_cast<double>(search_space));
}

uint64_t application_bound_gamma(const QSearchConfig& cfg, uint64_t search_space) {
    uint64_t w = worst_case_applications(cfg, search_space);
    auto gamma = static_cast<uint64_t>(
        std::ceil(static_cast<double>(w) / std::sqrt(static_cast<double>(search_space))));
    if (gamma == 0) gamma = 1;
    // certify gamma^2 * N >= W^2 in integers so gamma * sqrt(N) >= W holds exactly
    auto sq = [](uint64_t x) { return static_cast<unsigned __int128>(x) * x; };
    while (sq(gamma) * search_space < sq(w)) ++gamma;
    return gamma;
}

namespace {

class AnalyticUniformTarget final : public SearchTarget {
  public:
    AnalyticUniformTarget(uint64_t space_size, std::vector<uint64_t> marked)
        : space_size_(space_size), marked_(std::move(marked)) {
        std::sort(marked_.begin(), marked_.end());
    }

    GroverOutcome sample_direct(Rng& rng, QueryCounter& counter) const override {
        counter.add_a_applications(1);
        uint64_t label = rng.uniform_index(space_size_);
        return GroverOutcome{label, std::binary_search(marked_.begin(), marked_.end(), label)};
    }

    GroverOutcome sample_grover(uint64_t iterations, Rng& rng, QueryCounter& counter) const override {
        return analytic_grover_sample(space_size_, marked_, iterations, rng, counter);
    }

    bool is_good(const GroverOutcome& outcome) const override { return outcome.flag; }

  private:
    uint64_t space_size_;
    std::vector<uint64_t> marked_;
};

class StatevectorUniformTarget final : public SearchTarget {
  public:
    StatevectorUniformTarget(uint64_t space_size, std::vector<uint64_t> marked, uint32_t qubit_cap)
        : layout_({{"index", log2_exact(space_size)}}),
          circuit_(uniform_preparation("index")),
          marked_(std::move(marked)),
          qubit_cap_(qubit_cap) {
        if (!is_pow2(space_size) || space_size < 2)
            raise(ErrorCode::invalid_argument, "space size must be a power of two >= 2");
        std::sort(marked_.begin(), marked_.end());
        chi_ = [this](uint64_t basis) {
            return std::binary_search(marked_.begin(), marked_.end(), basis);
        };
    }

    GroverOutcome sample_direct(Rng& rng, QueryCounter& counter) const override {
        counter.add_a_applications(1);
        return grover_power(circuit_, chi_, 0, layout_, rng, counter, qubit_cap_);
    }

    GroverOutcome sample_grover(uint64_t iterations, Rng& rng, QueryCounter& counter) const override {
        counter.add_a_applications(1 + 2 * iterations);
        return grover_power(circuit_, chi_, iterations, layout_, rng, counter, qubit_cap_);
    }

    bool is_good(const GroverOutcome& outcome) const override { return outcome.flag; }

  private:
    RegisterLayout layout_;
    PreparableCircuit circuit_;
    std::vector<uint64_t> marked_;
    uint32_t qubit_cap_;
    BasisPredicate chi_;
};

}  // namespace

std::unique_ptr<SearchTarget> make_uniform_target(const Backend& backend, uint64_t space_size,
                                                  std::vector<uint64_t> marked) {
    if (backend.kind == BackendKind::analytic)
        return std::make_unique<AnalyticUniformTarget>(space_size, std::move(marked));
    return std::make_unique<StatevectorUniformTarget>(space_size, std::move(marked),
                                                      backend.qubit_cap);
}

}  // namespace qkm
