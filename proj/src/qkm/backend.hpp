// Backend selection: exact dense statevector vs closed-form analytic
// sampling. Both expose the same counting surface and the same outcome
// distributions on the overlapping domain; the statevector side rounds the
// requested number of estimation points up to a power of two (its phase
// register), which only tightens the counting error bound.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkm/analytic.hpp"
#include "qkm/statevector.hpp"

namespace qkm {

enum class BackendKind {
    analytic = 0,
    exact_statevector = 1,
};

std::string to_string(BackendKind kind);
BackendKind backend_kind_from_string(const std::string& name);

struct Backend {
    BackendKind kind = BackendKind::analytic;
    uint32_t qubit_cap = default_qubit_cap;

    // Number of phase-estimation points actually used for a requested M.
    uint64_t count_points(uint64_t requested_m) const {
        return kind == BackendKind::analytic ? requested_m : next_pow2(requested_m);
    }

    // Exact outcome distribution over phase values y for counting t marked
    // of space_size, at the backend's effective point count.
    std::vector<double> count_distribution(uint64_t space_size, uint64_t t,
                                           uint64_t requested_m) const;

    // Exact P[estimate < threshold] for the same circuit.
    double count_yes_probability(uint64_t space_size, uint64_t t, uint64_t requested_m,
                                 double threshold) const;

    // One measured counting run; charges the effective M oracle rounds.
    CountEstimate count_sample(uint64_t space_size, uint64_t t, uint64_t requested_m, Rng& rng,
                               QueryCounter& counter) const;
};

}  // namespace qkm
