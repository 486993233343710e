/*
 * C interface to the approximate k-mismatch simulation library.
 *
 * Conventions:
 *   - Every fallible call returns a qkm_status; QKM_OK is zero.
 *   - Objects are opaque handles created and destroyed by the library.
 *   - Strings returned through char** are owned by the caller and released
 *     with qkm_string_free.
 *   - qkm_last_error_message() describes the most recent failure on the
 *     calling thread.
 */
#ifndef QKM_H
#define QKM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QKM_API __declspec(dllexport)
#else
#define QKM_API __attribute__((visibility("default")))
#endif

typedef int32_t qkm_status;

enum {
    QKM_OK = 0,
    QKM_ERROR_EMPTY_PATTERN = 1,
    QKM_ERROR_PATTERN_LONGER_THAN_TEXT = 2,
    QKM_ERROR_NON_POSITIVE_K = 3,
    QKM_ERROR_EPSILON_OUT_OF_RANGE = 4,
    QKM_ERROR_LENGTH_MISMATCH = 5,
    QKM_ERROR_STATE_TOO_LARGE = 6,
    QKM_ERROR_UNKNOWN_REGISTER = 7,
    QKM_ERROR_INFEASIBLE_PLANT = 8,
    QKM_ERROR_INVALID_ARGUMENT = 9,
    QKM_ERROR_INTERNAL = 10
};

typedef enum {
    QKM_BACKEND_ANALYTIC = 0,
    QKM_BACKEND_EXACT = 1
} qkm_backend_kind;

typedef struct qkm_instance_s qkm_instance;

typedef struct qkm_options_s {
    int32_t backend;       /* qkm_backend_kind */
    int32_t qubit_cap;     /* dense statevector qubit budget */
    uint64_t master_seed;
    uint64_t stream_index;
    int32_t threads;       /* trial-batch parallelism */
} qkm_options;

QKM_API const char* qkm_version(void);
QKM_API const char* qkm_status_name(qkm_status status);
QKM_API const char* qkm_last_error_message(void);
QKM_API void qkm_string_free(char* text);

QKM_API void qkm_options_init(qkm_options* options);

/* ---- instances ------------------------------------------------------- */

QKM_API qkm_status qkm_instance_create(const uint8_t* text, size_t text_len,
                                       const uint8_t* pattern, size_t pattern_len, int64_t k,
                                       double epsilon, qkm_instance** out);

/* plant_spec: "random", "match-at-distance-D", "match-at-distance-D@J",
 * or "none-above-distance-D". */
QKM_API qkm_status qkm_instance_generate(size_t n, size_t m, int64_t k, double epsilon,
                                         const char* plant_spec, uint64_t seed,
                                         qkm_instance** out);

QKM_API void qkm_instance_free(qkm_instance* instance);

QKM_API size_t qkm_instance_text_len(const qkm_instance* instance);
QKM_API size_t qkm_instance_pattern_len(const qkm_instance* instance);
QKM_API const uint8_t* qkm_instance_text(const qkm_instance* instance);
QKM_API const uint8_t* qkm_instance_pattern(const qkm_instance* instance);
QKM_API int64_t qkm_instance_k(const qkm_instance* instance);
QKM_API double qkm_instance_epsilon(const qkm_instance* instance);

/* Sidecar metadata: {n, m, k, epsilon, plant, seed, verified_min_distance}. */
QKM_API qkm_status qkm_instance_sidecar_json(const qkm_instance* instance, char** out_json);

/* ---- operations ------------------------------------------------------ */

/* One matcher run; JSON fields: position, flag, queries, backend, seed,
 * recheck_distance. */
QKM_API qkm_status qkm_match(const qkm_instance* instance, const qkm_options* options,
                             char** out_report_json);

/* Seeded trial batch; JSON has "trials" (array of reports) and "aggregate". */
QKM_API qkm_status qkm_match_trials(const qkm_instance* instance, const qkm_options* options,
                                    int64_t trials, char** out_json);

/* Hamming gap decision between two equal-length strings. */
QKM_API qkm_status qkm_decide(const uint8_t* x, const uint8_t* y, size_t length, int64_t k,
                              double epsilon, const qkm_options* options, int32_t* out_verdict,
                              uint64_t* out_oracle_rounds);

/* One counting-estimate sample for t marked of space_size with m_points. */
QKM_API qkm_status qkm_count_sample(uint64_t space_size, uint64_t marked, uint64_t m_points,
                                    const qkm_options* options, double* out_estimate,
                                    uint64_t* out_oracle_rounds);

/* Histogram of counting estimates over seeded trials, with the exact
 * per-outcome probabilities alongside the empirical counts. */
QKM_API qkm_status qkm_count_histogram(uint64_t space_size, uint64_t marked, uint64_t m_points,
                                       int64_t trials, const qkm_options* options,
                                       char** out_json);

/* Error bound of the counting theorem at the given confidence parameter. */
QKM_API qkm_status qkm_counting_error_bound(uint64_t space_size, uint64_t marked,
                                            uint64_t m_points, uint64_t confidence,
                                            double* out_bound);

/* grid_json: {"n":[...],"m":[...],"k":[...],"epsilon":[...]}; returns the
 * sweep as CSV with one row per grid point. */
QKM_API qkm_status qkm_bench(const char* grid_json, int64_t trials, const qkm_options* options,
                             char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* QKM_H */
