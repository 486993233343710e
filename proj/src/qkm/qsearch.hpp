// Exponential-schedule amplitude amplification with measured restarts: run
// the preparation directly, and if the measured outcome is not good, run a
// Grover power with a uniformly random exponent from a geometrically growing
// window. Works without knowing the success probability; gives up after a
// cutoff of L rounds.
#pragma once

#include <cstdint>
#include <memory>

#include "qkm/analytic.hpp"
#include "qkm/backend.hpp"
#include "qkm/statevector.hpp"

namespace qkm {

struct QSearchConfig {
    double growth = 1.2;      // schedule base c, in (1, 2)
    uint32_t min_rounds = 12;  // floor C on the cutoff
    double alpha = 8.0;       // analysis constant in the cutoff formula

    void validate() const;

    // L = max(C, ceil(log(4 * alpha * sqrt(T)) / log(c))).
    uint64_t cutoff_rounds(double t_bound) const;
};

// Abstracts how the search touches the preparation A: one direct measured
// run, or one measured Grover power. Implementations charge the counter for
// everything a coherent run would query. Targets are immutable; all
// per-sample state lives in the rng and counter, so one target may serve
// concurrent trials.
class SearchTarget {
  public:
    virtual ~SearchTarget() = default;
    virtual GroverOutcome sample_direct(Rng& rng, QueryCounter& counter) const = 0;
    virtual GroverOutcome sample_grover(uint64_t iterations, Rng& rng,
                                        QueryCounter& counter) const = 0;
    virtual bool is_good(const GroverOutcome& outcome) const = 0;
};

struct QSearchResult {
    GroverOutcome outcome;
    bool found = false;
    uint64_t iterations_used = 0;  // the schedule variable t
    uint64_t rounds_run = 0;       // loop rounds actually executed
};

// Runs the schedule against the target with budget parameter T >= 1/a
// (any T works when nothing is good). found = true only after the classical
// recheck of the good predicate on the measured outcome passes.
QSearchResult qsearch_prime(const SearchTarget& target, double t_bound, const QSearchConfig& cfg,
                            Rng& rng, QueryCounter& counter);

// Exact worst-case A/A^-1 applications of one qsearch_prime run with budget
// t_bound: sum over rounds of (2 + 2*ceil(c^l)) - one direct run, one
// preparation of the Grover start, and up to ceil(c^l) iterates costing one
// A and one A^-1 each.
uint64_t worst_case_applications_for_budget(const QSearchConfig& cfg, double t_bound);

// Same with the weak-search budget T = 2N.
uint64_t worst_case_applications(const QSearchConfig& cfg, uint64_t search_space);

// ceil(max over N in {2^1..2^20} of worst_case_applications(N)/sqrt(N)); the
// integer constant bounding applications by gamma * sqrt(N).
uint64_t application_bound_gamma(const QSearchConfig& cfg, uint64_t search_space);

// Searches a classically known marked set via the chosen backend. The
// statevector path builds the uniform circuit; the analytic path samples
// closed forms. Used directly by tests and as the weak-search scaffold.
std::unique_ptr<SearchTarget> make_uniform_target(const Backend& backend, uint64_t space_size,
                                                  std::vector<uint64_t> marked);

}  // namespace qkm
