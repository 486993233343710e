#include "qkm/backend.hpp"

namespace qkm {

std::string to_string(BackendKind kind) {
    return kind == BackendKind::analytic ? "analytic" : "exact";
}

BackendKind backend_kind_from_string(const std::string& name) {
    if (name == "analytic") return BackendKind::analytic;
    if (name == "exact" || name == "exact-statevector") return BackendKind::exact_statevector;
    raise(ErrorCode::invalid_argument, "unknown backend '" + name + "'");
}

namespace {

BasisPredicate first_t_marked(uint64_t t) {
    return [t](uint64_t label) { return label < t; };
}

}  // namespace

std::vector<double> Backend::count_distribution(uint64_t space_size, uint64_t t,
                                                uint64_t requested_m) const {
    uint64_t m = count_points(requested_m);
    if (kind == BackendKind::analytic) return qae_outcome_distribution(space_size, t, m);
    // The phase marginal depends on the marked set only through t, so any
    // t-subset stands in for the real predicate.
    return amplitude_estimation_distribution(space_size, first_t_marked(t), m, qubit_cap).prob;
}

double Backend::count_yes_probability(uint64_t space_size, uint64_t t, uint64_t requested_m,
                                      double threshold) const {
    uint64_t m = count_points(requested_m);
    if (kind == BackendKind::analytic)
        return CountSampler(space_size, t, m).yes_probability(threshold);
    EstimateDistribution dist =
        amplitude_estimation_distribution(space_size, first_t_marked(t), m, qubit_cap);
    double p = 0.0;
    for (uint64_t y = 0; y < m; ++y)
        if (dist.estimate_for_phase(y) < threshold) p += dist.prob[y];
    return p < 1.0 ? p : 1.0;
}

CountEstimate Backend::count_sample(uint64_t space_size, uint64_t t, uint64_t requested_m, Rng& rng,
                                    QueryCounter& counter) const {
    uint64_t m = count_points(requested_m);
    if (kind == BackendKind::analytic)
        return analytic_count_sample(space_size, t, m, rng, counter);
    return sample_amplitude_estimate(space_size, first_t_marked(t), m, rng, counter, qubit_cap);
}

}  // namespace qkm
