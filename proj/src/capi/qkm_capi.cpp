// The shared-library boundary: opaque handles over the C++ core, exceptions
// mapped to status codes, rich results delivered as JSON/CSV strings.
#include "qkm.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkm/matcher.hpp"

struct qkm_instance_s {
    qkm::GeneratedInstance generated;
};

namespace {

thread_local std::string g_last_error;

qkm_status status_from_code(qkm::ErrorCode code) {
    switch (code) {
        case qkm::ErrorCode::none: return QKM_OK;
        case qkm::ErrorCode::empty_pattern: return QKM_ERROR_EMPTY_PATTERN;
        case qkm::ErrorCode::pattern_longer_than_text: return QKM_ERROR_PATTERN_LONGER_THAN_TEXT;
        case qkm::ErrorCode::non_positive_k: return QKM_ERROR_NON_POSITIVE_K;
        case qkm::ErrorCode::epsilon_out_of_range: return QKM_ERROR_EPSILON_OUT_OF_RANGE;
        case qkm::ErrorCode::length_mismatch: return QKM_ERROR_LENGTH_MISMATCH;
        case qkm::ErrorCode::state_too_large: return QKM_ERROR_STATE_TOO_LARGE;
        case qkm::ErrorCode::unknown_register: return QKM_ERROR_UNKNOWN_REGISTER;
        case qkm::ErrorCode::infeasible_plant: return QKM_ERROR_INFEASIBLE_PLANT;
        case qkm::ErrorCode::invalid_argument: return QKM_ERROR_INVALID_ARGUMENT;
    }
    return QKM_ERROR_INTERNAL;
}

template <typename Fn>
qkm_status guarded(Fn&& fn) {
    try {
        fn();
        return QKM_OK;
    } catch (const qkm::Error& err) {
        g_last_error = err.what();
        return status_from_code(err.code());
    } catch (const std::exception& err) {
        g_last_error = err.what();
        return QKM_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return QKM_ERROR_INTERNAL;
    }
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

qkm::Backend backend_from_options(const qkm_options* options) {
    qkm::Backend backend;
    if (options == nullptr) return backend;
    backend.kind = options->backend == QKM_BACKEND_EXACT ? qkm::BackendKind::exact_statevector
                                                         : qkm::BackendKind::analytic;
    if (options->qubit_cap > 0) backend.qubit_cap = static_cast<uint32_t>(options->qubit_cap);
    return backend;
}

qkm::RngSeed seed_from_options(const qkm_options* options) {
    if (options == nullptr) return qkm::RngSeed{1, 0};
    return qkm::RngSeed{options->master_seed, options->stream_index};
}

uint32_t threads_from_options(const qkm_options* options) {
    if (options == nullptr || options->threads < 1) return 1;
    return static_cast<uint32_t>(options->threads);
}

void require(bool ok, const char* what) {
    if (!ok) qkm::raise(qkm::ErrorCode::invalid_argument, what);
}

}  // namespace

extern "C" {

const char* qkm_version(void) { return "1.0.0"; }

const char* qkm_status_name(qkm_status status) {
    switch (status) {
        case QKM_OK: return "ok";
        case QKM_ERROR_EMPTY_PATTERN: return "empty_pattern";
        case QKM_ERROR_PATTERN_LONGER_THAN_TEXT: return "pattern_longer_than_text";
        case QKM_ERROR_NON_POSITIVE_K: return "non_positive_k";
        case QKM_ERROR_EPSILON_OUT_OF_RANGE: return "epsilon_out_of_range";
        case QKM_ERROR_LENGTH_MISMATCH: return "length_mismatch";
        case QKM_ERROR_STATE_TOO_LARGE: return "state_too_large";
        case QKM_ERROR_UNKNOWN_REGISTER: return "unknown_register";
        case QKM_ERROR_INFEASIBLE_PLANT: return "infeasible_plant";
        case QKM_ERROR_INVALID_ARGUMENT: return "invalid_argument";
        case QKM_ERROR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* qkm_last_error_message(void) { return g_last_error.c_str(); }

void qkm_string_free(char* text) { delete[] text; }

void qkm_options_init(qkm_options* options) {
    if (options == nullptr) return;
    options->backend = QKM_BACKEND_ANALYTIC;
    options->qubit_cap = 24;
    options->master_seed = 1;
    options->stream_index = 0;
    options->threads = 1;
}

qkm_status qkm_instance_create(const uint8_t* text, size_t text_len, const uint8_t* pattern,
                               size_t pattern_len, int64_t k, double epsilon,
                               qkm_instance** out) {
    return guarded([&] {
        require(out != nullptr, "null output handle");
        require(text != nullptr || text_len == 0, "null text");
        require(pattern != nullptr || pattern_len == 0, "null pattern");
        qkm::MatchInstance inst = qkm::validate_instance(
            std::vector<uint8_t>(text, text + text_len),
            std::vector<uint8_t>(pattern, pattern + pattern_len), k, epsilon);
        auto dists = qkm::window_distances(inst);
        uint64_t min_dist = *std::min_element(dists.begin(), dists.end());
        qkm::PlantSpec plant;  // externally supplied data: no plant
        *out = new qkm_instance_s{
            qkm::GeneratedInstance{std::move(inst), plant, qkm::RngSeed{0, 0}, min_dist}};
    });
}

qkm_status qkm_instance_generate(size_t n, size_t m, int64_t k, double epsilon,
                                 const char* plant_spec, uint64_t seed, qkm_instance** out) {
    return guarded([&] {
        require(out != nullptr, "null output handle");
        qkm::PlantSpec plant =
            qkm::PlantSpec::parse(plant_spec == nullptr ? "random" : plant_spec);
        qkm::GeneratedInstance gen =
            qkm::generate_instance(n, m, k, epsilon, plant, qkm::RngSeed{seed, 0});
        *out = new qkm_instance_s{std::move(gen)};
    });
}

void qkm_instance_free(qkm_instance* instance) { delete instance; }

size_t qkm_instance_text_len(const qkm_instance* instance) {
    return instance == nullptr ? 0 : instance->generated.instance.n();
}

size_t qkm_instance_pattern_len(const qkm_instance* instance) {
    return instance == nullptr ? 0 : instance->generated.instance.m();
}

const uint8_t* qkm_instance_text(const qkm_instance* instance) {
    return instance == nullptr ? nullptr : instance->generated.instance.text().data();
}

const uint8_t* qkm_instance_pattern(const qkm_instance* instance) {
    return instance == nullptr ? nullptr : instance->generated.instance.pattern().data();
}

int64_t qkm_instance_k(const qkm_instance* instance) {
    return instance == nullptr ? 0 : instance->generated.instance.k();
}

double qkm_instance_epsilon(const qkm_instance* instance) {
    return instance == nullptr ? 0.0 : instance->generated.instance.epsilon();
}

qkm_status qkm_instance_sidecar_json(const qkm_instance* instance, char** out_json) {
    return guarded([&] {
        require(instance != nullptr, "null instance");
        require(out_json != nullptr, "null output");
        *out_json = copy_string(qkm::sidecar_to_json(instance->generated));
    });
}

qkm_status qkm_match(const qkm_instance* instance, const qkm_options* options,
                     char** out_report_json) {
    return guarded([&] {
        require(instance != nullptr, "null instance");
        require(out_report_json != nullptr, "null output");
        qkm::MatchReport report = qkm::approx_bounded_dist_matching(
            instance->generated.instance, backend_from_options(options),
            seed_from_options(options));
        *out_report_json = copy_string(qkm::report_to_json(report));
    });
}

qkm_status qkm_match_trials(const qkm_instance* instance, const qkm_options* options,
                            int64_t trials, char** out_json) {
    return guarded([&] {
        require(instance != nullptr, "null instance");
        require(out_json != nullptr, "null output");
        require(trials >= 1, "need at least one trial");
        qkm::TrialSet set = qkm::run_match_trials(
            instance->generated.instance, backend_from_options(options),
            seed_from_options(options), static_cast<uint64_t>(trials),
            threads_from_options(options));
        *out_json = copy_string(qkm::trial_set_to_json(set));
    });
}

qkm_status qkm_decide(const uint8_t* x, const uint8_t* y, size_t length, int64_t k,
                      double epsilon, const qkm_options* options, int32_t* out_verdict,
                      uint64_t* out_oracle_rounds) {
    return guarded([&] {
        require(x != nullptr && y != nullptr, "null input strings");
        require(out_verdict != nullptr, "null output");
        qkm::Rng rng(seed_from_options(options));
        qkm::QueryCounter counter;
        bool verdict = qkm::approx_bounded_hamming_decider(
            std::span<const uint8_t>(x, length), std::span<const uint8_t>(y, length), k, epsilon,
            backend_from_options(options), rng, counter);
        *out_verdict = verdict ? 1 : 0;
        if (out_oracle_rounds != nullptr) *out_oracle_rounds = counter.oracle_rounds;
    });
}

qkm_status qkm_count_sample(uint64_t space_size, uint64_t marked, uint64_t m_points,
                            const qkm_options* options, double* out_estimate,
                            uint64_t* out_oracle_rounds) {
    return guarded([&] {
        require(out_estimate != nullptr, "null output");
        qkm::Rng rng(seed_from_options(options));
        qkm::QueryCounter counter;
        qkm::CountEstimate est = backend_from_options(options).count_sample(space_size, marked,
                                                                            m_points, rng, counter);
        *out_estimate = est.t_prime;
        if (out_oracle_rounds != nullptr) *out_oracle_rounds = counter.oracle_rounds;
    });
}

qkm_status qkm_count_histogram(uint64_t space_size, uint64_t marked, uint64_t m_points,
                               int64_t trials, const qkm_options* options, char** out_json) {
    return guarded([&] {
        require(out_json != nullptr, "null output");
        require(trials >= 1, "need at least one trial");
        qkm::Backend backend = backend_from_options(options);
        uint64_t effective = backend.count_points(m_points);
        std::vector<double> dist = backend.count_distribution(space_size, marked, m_points);
        // sample the extracted exact distribution; one CDF, many draws
        std::vector<double> cdf(dist.size());
        double acc = 0.0;
        for (size_t y = 0; y < dist.size(); ++y) {
            acc += dist[y];
            cdf[y] = acc;
        }
        qkm::RngSeed master = seed_from_options(options);
        std::vector<uint64_t> counts(dist.size(), 0);
        for (int64_t i = 0; i < trials; ++i) {
            qkm::Rng rng(qkm::derive_stream(master, static_cast<uint64_t>(i)));
            double u = rng.uniform_double() * cdf.back();
            auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            if (it == cdf.end()) --it;
            counts[static_cast<size_t>(it - cdf.begin())] += 1;
        }
        nlohmann::json buckets = nlohmann::json::array();
        qkm::EstimateDistribution helper{space_size, effective, {}};
        for (size_t y = 0; y < counts.size(); ++y) {
            if (counts[y] == 0 && dist[y] < 1e-12) continue;
            buckets.push_back({{"phase", y},
                               {"estimate", helper.estimate_for_phase(y)},
                               {"count", counts[y]},
                               {"probability", dist[y]}});
        }
        nlohmann::json j{{"space_size", space_size}, {"marked", marked},
                         {"m_points", effective},   {"trials", trials},
                         {"backend", qkm::to_string(backend.kind)}, {"buckets", buckets}};
        *out_json = copy_string(j.dump());
    });
}

qkm_status qkm_counting_error_bound(uint64_t space_size, uint64_t marked, uint64_t m_points,
                                    uint64_t confidence, double* out_bound) {
    return guarded([&] {
        require(out_bound != nullptr, "null output");
        *out_bound = qkm::counting_error_bound(space_size, marked, m_points, confidence);
    });
}

qkm_status qkm_bench(const char* grid_json, int64_t trials, const qkm_options* options,
                     char** out_csv) {
    return guarded([&] {
        require(grid_json != nullptr, "null grid");
        require(out_csv != nullptr, "null output");
        require(trials >= 1, "need at least one trial");
        nlohmann::json parsed = nlohmann::json::parse(grid_json, nullptr, false);
        if (parsed.is_discarded())
            qkm::raise(qkm::ErrorCode::invalid_argument, "grid is not valid JSON");
        qkm::BenchGrid grid;
        auto read_axis = [&parsed](const char* key, auto& axis) {
            if (!parsed.contains(key))
                qkm::raise(qkm::ErrorCode::invalid_argument,
                           std::string("grid is missing axis '") + key + "'");
            for (const auto& v : parsed.at(key)) axis.push_back(v);
        };
        read_axis("n", grid.n);
        read_axis("m", grid.m);
        read_axis("k", grid.k);
        read_axis("epsilon", grid.epsilon);
        std::vector<qkm::BenchRow> rows =
            qkm::bench_sweep(grid, static_cast<uint64_t>(trials), backend_from_options(options),
                             seed_from_options(options), threads_from_options(options));
        *out_csv = copy_string(qkm::bench_to_csv(rows));
    });
}

}  // extern "C"
