#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkm.h"

namespace {

struct Owned {
    char* ptr = nullptr;
    ~Owned() { qkm_string_free(ptr); }
    std::string str() const { return ptr == nullptr ? "" : std::string(ptr); }
};

using InstancePtr = std::unique_ptr<qkm_instance, decltype(&qkm_instance_free)>;

InstancePtr make_instance(const char* text, const char* pattern, int64_t k, double eps) {
    qkm_instance* raw = nullptr;
    qkm_status st = qkm_instance_create(reinterpret_cast<const uint8_t*>(text), std::strlen(text),
                                        reinterpret_cast<const uint8_t*>(pattern),
                                        std::strlen(pattern), k, eps, &raw);
    REQUIRE(st == QKM_OK);
    return InstancePtr(raw, &qkm_instance_free);
}

}  // namespace

TEST_CASE("version and status names are stable strings") {
    CHECK(std::string(qkm_version()) == "1.0.0");
    CHECK(std::string(qkm_status_name(QKM_OK)) == "ok");
    CHECK(std::string(qkm_status_name(QKM_ERROR_EMPTY_PATTERN)) == "empty_pattern");
    CHECK(std::string(qkm_status_name(QKM_ERROR_INTERNAL)) == "internal");
}

TEST_CASE("options init fills the documented defaults") {
    qkm_options opts;
    qkm_options_init(&opts);
    CHECK(opts.backend == QKM_BACKEND_ANALYTIC);
    CHECK(opts.qubit_cap == 24);
    CHECK(opts.master_seed == 1);
    CHECK(opts.stream_index == 0);
    CHECK(opts.threads == 1);
}

TEST_CASE("instance creation surfaces validation codes") {
    qkm_instance* raw = nullptr;
    const uint8_t text[] = {'a', 'b'};
    CHECK(qkm_instance_create(text, 2, text, 0, 1, 1.0, &raw) == QKM_ERROR_EMPTY_PATTERN);
    CHECK(qkm_instance_create(text, 1, text, 2, 1, 1.0, &raw) ==
          QKM_ERROR_PATTERN_LONGER_THAN_TEXT);
    CHECK(qkm_instance_create(text, 2, text, 1, 0, 1.0, &raw) == QKM_ERROR_NON_POSITIVE_K);
    CHECK(qkm_instance_create(text, 2, text, 1, 1, 2.0, &raw) == QKM_ERROR_EPSILON_OUT_OF_RANGE);
    CHECK(std::string(qkm_last_error_message()).size() > 0);
}

TEST_CASE("instance accessors expose the stored fields") {
    InstancePtr inst = make_instance("abcdabcd", "abcd", 2, 0.5);
    CHECK(qkm_instance_text_len(inst.get()) == 8);
    CHECK(qkm_instance_pattern_len(inst.get()) == 4);
    CHECK(qkm_instance_k(inst.get()) == 2);
    CHECK(qkm_instance_epsilon(inst.get()) == 0.5);
    CHECK(std::memcmp(qkm_instance_text(inst.get()), "abcdabcd", 8) == 0);
}

TEST_CASE("generated instances carry sidecar metadata") {
    qkm_instance* raw = nullptr;
    REQUIRE(qkm_instance_generate(96, 16, 2, 1.0, "match-at-distance-2@10", 99, &raw) == QKM_OK);
    InstancePtr inst(raw, &qkm_instance_free);
    Owned sidecar;
    REQUIRE(qkm_instance_sidecar_json(inst.get(), &sidecar.ptr) == QKM_OK);
    auto parsed = nlohmann::json::parse(sidecar.str());
    CHECK(parsed.at("n") == 96);
    CHECK(parsed.at("m") == 16);
    CHECK(parsed.at("k") == 2);
    CHECK(parsed.at("epsilon") == 1.0);
    CHECK(parsed.at("plant") == "match-at-distance-2@10");
    CHECK(parsed.at("verified_min_distance") == 2);

    CHECK(qkm_instance_generate(16, 20, 2, 1.0, "random", 0, &raw) == QKM_ERROR_INFEASIBLE_PLANT);
    CHECK(qkm_instance_generate(64, 16, 2, 1.0, "match-at-distance-99", 0, &raw) ==
          QKM_ERROR_INFEASIBLE_PLANT);
    CHECK(qkm_instance_generate(64, 16, 2, 1.0, "what", 0, &raw) == QKM_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("match reports parse and repeat deterministically") {
    qkm_instance* raw = nullptr;
    REQUIRE(qkm_instance_generate(64, 16, 2, 1.0, "match-at-distance-0", 123, &raw) == QKM_OK);
    InstancePtr inst(raw, &qkm_instance_free);
    qkm_options opts;
    qkm_options_init(&opts);
    opts.master_seed = 7;

    Owned one;
    REQUIRE(qkm_match(inst.get(), &opts, &one.ptr) == QKM_OK);
    auto report = nlohmann::json::parse(one.str());
    CHECK(report.contains("position"));
    CHECK(report.contains("flag"));
    CHECK(report.contains("queries"));
    CHECK(report.at("backend") == "analytic");
    CHECK(report.at("seed").at("master") == 7);

    Owned again;
    REQUIRE(qkm_match(inst.get(), &opts, &again.ptr) == QKM_OK);
    CHECK(one.str() == again.str());

    Owned batch;
    REQUIRE(qkm_match_trials(inst.get(), &opts, 20, &batch.ptr) == QKM_OK);
    auto set = nlohmann::json::parse(batch.str());
    CHECK(set.at("trials").size() == 20);
    CHECK(set.at("aggregate").at("trials") == 20);
    CHECK(set.at("aggregate").at("success_count").get<int64_t>() >= 14);

    qkm_options threaded = opts;
    threaded.threads = 3;
    Owned batch2;
    REQUIRE(qkm_match_trials(inst.get(), &threaded, 20, &batch2.ptr) == QKM_OK);
    CHECK(batch.str() == batch2.str());
}

TEST_CASE("decide answers both planted sides") {
    std::vector<uint8_t> x(64, 7);
    std::vector<uint8_t> y = x;
    qkm_options opts;
    qkm_options_init(&opts);
    int32_t verdict = -1;
    uint64_t rounds = 0;
    REQUIRE(qkm_decide(x.data(), y.data(), 64, 4, 1.0, &opts, &verdict, &rounds) == QKM_OK);
    CHECK(verdict == 1);
    CHECK(rounds == 452);  // ceil(6 pi / beta(1) * sqrt(64 / 4))

    for (int i = 0; i < 12; ++i) y[i * 5] = 8;  // distance 12 = 3k
    int no_count = 0;
    for (uint64_t s = 0; s < 40; ++s) {
        opts.master_seed = s;
        REQUIRE(qkm_decide(x.data(), y.data(), 64, 4, 1.0, &opts, &verdict, &rounds) == QKM_OK);
        if (verdict == 0) ++no_count;
    }
    CHECK(no_count >= 34);

    CHECK(qkm_decide(x.data(), y.data(), 0, 0, 1.0, &opts, &verdict, &rounds) ==
          QKM_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("count sampling and histograms expose the estimate law") {
    qkm_options opts;
    qkm_options_init(&opts);
    double estimate = -1;
    uint64_t rounds = 0;
    REQUIRE(qkm_count_sample(1024, 0, 128, &opts, &estimate, &rounds) == QKM_OK);
    CHECK(estimate == 0.0);
    CHECK(rounds == 128);

    Owned hist;
    REQUIRE(qkm_count_histogram(64, 8, 64, 200, &opts, &hist.ptr) == QKM_OK);
    auto parsed = nlohmann::json::parse(hist.str());
    CHECK(parsed.at("m_points") == 64);
    CHECK(parsed.at("trials") == 200);
    uint64_t total = 0;
    double prob_total = 0.0;
    for (const auto& bucket : parsed.at("buckets")) {
        total += bucket.at("count").get<uint64_t>();
        prob_total += bucket.at("probability").get<double>();
    }
    CHECK(total == 200);
    CHECK(prob_total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("the counting error bound crosses the boundary intact") {
    double bound = 0;
    REQUIRE(qkm_counting_error_bound(16, 4, 32, 6, &bound) == QKM_OK);
    CHECK(bound == doctest::Approx(13.71375).epsilon(1e-5));
    CHECK(qkm_counting_error_bound(15, 4, 32, 6, &bound) == QKM_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("the exact backend crosses the boundary on small instances") {
    qkm_instance* raw = nullptr;
    REQUIRE(qkm_instance_generate(24, 6, 1, 1.0, "match-at-distance-0@3", 4, &raw) == QKM_OK);
    InstancePtr inst(raw, &qkm_instance_free);
    qkm_options opts;
    qkm_options_init(&opts);
    opts.backend = QKM_BACKEND_EXACT;
    opts.master_seed = 2;
    Owned out;
    REQUIRE(qkm_match_trials(inst.get(), &opts, 3, &out.ptr) == QKM_OK);
    auto set = nlohmann::json::parse(out.str());
    CHECK(set.at("aggregate").at("success_count").get<int64_t>() >= 2);
    CHECK(set.at("trials")[0].at("backend") == "exact");

    // the qubit cap is enforced through the same boundary
    qkm_options capped = opts;
    capped.qubit_cap = 6;
    Owned failed;
    CHECK(qkm_match_trials(inst.get(), &capped, 1, &failed.ptr) == QKM_ERROR_STATE_TOO_LARGE);
}

TEST_CASE("bench emits one CSV row per grid point") {
    qkm_options opts;
    qkm_options_init(&opts);
    Owned csv;
    REQUIRE(qkm_bench(R"({"n":[128],"m":[32],"k":[2,4],"epsilon":[1.0]})", 6, &opts, &csv.ptr) ==
            QKM_OK);
    std::string text = csv.str();
    CHECK(text.rfind("n,m,k,epsilon,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);

    CHECK(qkm_bench("{not json", 6, &opts, &csv.ptr) == QKM_ERROR_INVALID_ARGUMENT);
    CHECK(qkm_bench(R"({"n":[128],"m":[32],"k":[2]})", 6, &opts, &csv.ptr) ==
          QKM_ERROR_INVALID_ARGUMENT);
}
