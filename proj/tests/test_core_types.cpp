#include <doctest.h>

#include <set>

#include "qkm/rng.hpp"
#include "qkm/types.hpp"

using namespace qkm;

namespace {

std::vector<uint8_t> bytes(const char* s) {
    return std::vector<uint8_t>(s, s + std::string(s).size());
}

}  // namespace

TEST_CASE("validate_instance copies fields through") {
    MatchInstance inst = validate_instance(bytes("aaaa"), bytes("aa"), 1, 1.0);
    CHECK(inst.n() == 4);
    CHECK(inst.m() == 2);
    CHECK(inst.k() == 1);
    CHECK(inst.epsilon() == 1.0);
}

TEST_CASE("validate_instance rejects bad parameters with specific codes") {
    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& err) {
            return err.code();
        }
        return ErrorCode::none;
    };
    CHECK(code_of([&] { validate_instance(bytes("a"), bytes("aa"), 1, 1.0); }) ==
          ErrorCode::pattern_longer_than_text);
    CHECK(code_of([&] { validate_instance(bytes("aaaa"), bytes(""), 1, 1.0); }) ==
          ErrorCode::empty_pattern);
    CHECK(code_of([&] { validate_instance(bytes("aaaa"), bytes("aa"), 0, 1.0); }) ==
          ErrorCode::non_positive_k);
    CHECK(code_of([&] { validate_instance(bytes("aaaa"), bytes("aa"), -3, 1.0); }) ==
          ErrorCode::non_positive_k);
    CHECK(code_of([&] { validate_instance(bytes("aaaa"), bytes("aa"), 1, 1.5); }) ==
          ErrorCode::epsilon_out_of_range);
    CHECK(code_of([&] { validate_instance(bytes("aaaa"), bytes("aa"), 1, 0.0); }) ==
          ErrorCode::epsilon_out_of_range);
}

TEST_CASE("validation is idempotent on accepted inputs") {
    MatchInstance a = validate_instance(bytes("abcabc"), bytes("bc"), 2, 0.25);
    MatchInstance b = validate_instance(a.text(), a.pattern(), a.k(), a.epsilon());
    CHECK(a.text() == b.text());
    CHECK(a.pattern() == b.pattern());
    CHECK(a.k() == b.k());
    CHECK(a.epsilon() == b.epsilon());
}

TEST_CASE("derive_stream is deterministic and injective on small ranges") {
    RngSeed base{0xDEADBEEF, 3};
    CHECK(derive_stream(base, 0) == derive_stream(base, 0));
    std::set<uint64_t> streams;
    for (uint64_t child = 0; child < 4096; ++child)
        streams.insert(derive_stream(base, child).stream_index);
    CHECK(streams.size() == 4096);
    CHECK(derive_stream(base, 0).stream_index != derive_stream(base, 1).stream_index);
    // master seed passes through unchanged
    CHECK(derive_stream(base, 17).master_seed == base.master_seed);
}

TEST_CASE("child streams pass a serial-correlation smoke test") {
    // pool one million bits from child streams 0 and 1 and count lag-1
    // transition cells; threshold is the 0.999 quantile of chi-square(3)
    RngSeed base{42, 0};
    std::vector<int> bits;
    bits.reserve(1000000);
    for (uint64_t child : {0ull, 1ull}) {
        Rng rng(derive_stream(base, child));
        for (int i = 0; i < 500000; ++i) bits.push_back(static_cast<int>(rng.next_u64() >> 63));
    }
    double cell[2][2] = {{0, 0}, {0, 0}};
    for (size_t i = 0; i + 1 < bits.size(); ++i) cell[bits[i]][bits[i + 1]] += 1;
    double expected = static_cast<double>(bits.size() - 1) / 4.0;
    double chi2 = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            chi2 += (cell[a][b] - expected) * (cell[a][b] - expected) / expected;
    CHECK(chi2 < 16.266);
}

TEST_CASE("identical seeds give identical streams") {
    Rng a(RngSeed{7, 9});
    Rng b(RngSeed{7, 9});
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform_index stays in range and covers it") {
    Rng rng(RngSeed{5, 0});
    std::set<uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        uint64_t v = rng.uniform_index(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("query counter accumulates monotonically and resets") {
    QueryCounter counter;
    counter.add_rounds(3);
    counter.add_decider_calls(2);
    counter.add_a_applications(5);
    CHECK(counter.oracle_rounds == 3);
    CHECK(counter.decider_calls == 2);
    CHECK(counter.a_applications == 5);
    counter.add_rounds(1);
    CHECK(counter.oracle_rounds == 4);
    counter.reset();
    CHECK(counter.oracle_rounds == 0);
    CHECK(counter.decider_calls == 0);
    CHECK(counter.a_applications == 0);
}
