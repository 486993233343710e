// Command-line front end over the shared-library C API: match / decide /
// count / gen / bench. Reports go to stdout as JSON or CSV; validation
// problems exit with status 2.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkm.h"

namespace {

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { qkm_string_free(ptr); }
};

std::vector<uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("cannot open file '" + path + "'");
    return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                                std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const void* data, size_t size) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CLI::ValidationError("cannot write file '" + path + "'");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

int fail(qkm_status status) {
    std::cerr << "error: " << qkm_status_name(status) << ": " << qkm_last_error_message()
              << "\n";
    return 2;
}

struct CommonOpts {
    std::string backend = "analytic";
    uint64_t seed = 1;
    int32_t threads = 1;
    int32_t qubit_cap = 24;

    void attach(CLI::App* cmd) {
        cmd->add_option("--backend", backend, "simulation backend")
            ->check(CLI::IsMember({"analytic", "exact"}));
        cmd->add_option("--seed", seed, "master seed");
        cmd->add_option("--threads", threads, "worker threads for trial batches");
        cmd->add_option("--qubit-cap", qubit_cap, "dense statevector qubit budget");
    }

    qkm_options to_options() const {
        qkm_options opts;
        qkm_options_init(&opts);
        opts.backend = backend == "exact" ? QKM_BACKEND_EXACT : QKM_BACKEND_ANALYTIC;
        opts.master_seed = seed;
        opts.threads = threads;
        opts.qubit_cap = qubit_cap;
        return opts;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate k-mismatch matcher, simulated in the quantum query model"};
    app.require_subcommand(1);

    // match
    auto* match_cmd = app.add_subcommand("match", "search a text for an approximate match");
    std::string match_text_path, match_pattern_path;
    int64_t match_k = 1;
    double match_eps = 1.0;
    int64_t match_trials = 1;
    CommonOpts match_common;
    match_cmd->add_option("--text", match_text_path, "text file (raw bytes)")->required();
    match_cmd->add_option("--pattern", match_pattern_path, "pattern file (raw bytes)")->required();
    match_cmd->add_option("-k,--max-mismatches", match_k, "mismatch threshold")->required();
    match_cmd->add_option("--eps", match_eps, "relaxation parameter in (0, 1]")->required();
    match_cmd->add_option("--trials", match_trials, "number of seeded trials");
    match_common.attach(match_cmd);

    // decide
    auto* decide_cmd = app.add_subcommand("decide", "gap-decide the distance of two strings");
    std::string decide_x_path, decide_y_path;
    int64_t decide_k = 1;
    double decide_eps = 1.0;
    CommonOpts decide_common;
    decide_cmd->add_option("--x", decide_x_path, "first string file")->required();
    decide_cmd->add_option("--y", decide_y_path, "second string file")->required();
    decide_cmd->add_option("-k,--max-mismatches", decide_k, "mismatch threshold")->required();
    decide_cmd->add_option("--eps", decide_eps, "relaxation parameter in (0, 1]")->required();
    decide_common.attach(decide_cmd);

    // count
    auto* count_cmd = app.add_subcommand("count", "histogram of counting estimates");
    uint64_t count_n = 16, count_t = 0, count_m = 16;
    int64_t count_trials = 1;
    CommonOpts count_common;
    count_cmd->add_option("--n", count_n, "search-space size (power of two)")->required();
    count_cmd->add_option("--t", count_t, "true marked count")->required();
    count_cmd->add_option("--m-param", count_m, "estimation points M")->required();
    count_cmd->add_option("--trials", count_trials, "number of samples");
    count_common.attach(count_cmd);

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "generate a planted instance");
    uint64_t gen_n = 1024, gen_m = 256;
    int64_t gen_k = 16;
    double gen_eps = 1.0;
    std::string gen_plant = "random";
    std::string gen_out;
    CommonOpts gen_common;
    gen_cmd->add_option("--n", gen_n, "text length")->required();
    gen_cmd->add_option("--m", gen_m, "pattern length")->required();
    gen_cmd->add_option("-k,--max-mismatches", gen_k, "mismatch threshold")->required();
    gen_cmd->add_option("--eps", gen_eps, "relaxation parameter in (0, 1]")->required();
    gen_cmd->add_option("--plant", gen_plant,
                        "plant spec: random | match-at-distance-D[@J] | none-above-distance-D");
    gen_cmd->add_option("--out", gen_out, "output prefix (.text/.pattern/.json)")->required();
    gen_common.attach(gen_cmd);

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "query-scaling sweep over a parameter grid");
    std::string bench_grid;
    int64_t bench_trials = 25;
    std::string bench_out;
    CommonOpts bench_common;
    bench_cmd
        ->add_option("--grid", bench_grid,
                     "JSON grid {\"n\":[...],\"m\":[...],\"k\":[...],\"epsilon\":[...]}")
        ->required();
    bench_cmd->add_option("--trials", bench_trials, "trials per grid point");
    bench_cmd->add_option("--out", bench_out, "CSV output file (default stdout)");
    bench_common.attach(bench_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (match_cmd->parsed()) {
            auto text = read_file_bytes(match_text_path);
            auto pattern = read_file_bytes(match_pattern_path);
            qkm_instance* inst = nullptr;
            qkm_status st = qkm_instance_create(text.data(), text.size(), pattern.data(),
                                                pattern.size(), match_k, match_eps, &inst);
            if (st != QKM_OK) return fail(st);
            std::unique_ptr<qkm_instance, decltype(&qkm_instance_free)> guard(inst,
                                                                              &qkm_instance_free);
            qkm_options opts = match_common.to_options();
            OwnedString out;
            st = qkm_match_trials(inst, &opts, match_trials, &out.ptr);
            if (st != QKM_OK) return fail(st);
            std::cout << out.ptr << "\n";
            return 0;
        }

        if (decide_cmd->parsed()) {
            auto x = read_file_bytes(decide_x_path);
            auto y = read_file_bytes(decide_y_path);
            if (x.size() != y.size()) {
                std::cerr << "error: length_mismatch: input files differ in length\n";
                return 2;
            }
            qkm_options opts = decide_common.to_options();
            int32_t verdict = 0;
            uint64_t rounds = 0;
            qkm_status st =
                qkm_decide(x.data(), y.data(), x.size(), decide_k, decide_eps, &opts, &verdict,
                           &rounds);
            if (st != QKM_OK) return fail(st);
            std::cout << "{\"verdict\":" << verdict << ",\"queries\":" << rounds
                      << ",\"backend\":\"" << decide_common.backend << "\",\"seed\":"
                      << decide_common.seed << "}\n";
            return 0;
        }

        if (count_cmd->parsed()) {
            qkm_options opts = count_common.to_options();
            OwnedString out;
            qkm_status st =
                qkm_count_histogram(count_n, count_t, count_m, count_trials, &opts, &out.ptr);
            if (st != QKM_OK) return fail(st);
            std::cout << out.ptr << "\n";
            return 0;
        }

        if (gen_cmd->parsed()) {
            qkm_instance* inst = nullptr;
            qkm_status st = qkm_instance_generate(gen_n, gen_m, gen_k, gen_eps, gen_plant.c_str(),
                                                  gen_common.seed, &inst);
            if (st != QKM_OK) return fail(st);
            std::unique_ptr<qkm_instance, decltype(&qkm_instance_free)> guard(inst,
                                                                              &qkm_instance_free);
            OwnedString sidecar;
            st = qkm_instance_sidecar_json(inst, &sidecar.ptr);
            if (st != QKM_OK) return fail(st);
            write_file(gen_out + ".text", qkm_instance_text(inst), qkm_instance_text_len(inst));
            write_file(gen_out + ".pattern", qkm_instance_pattern(inst),
                       qkm_instance_pattern_len(inst));
            std::string sidecar_text = std::string(sidecar.ptr) + "\n";
            write_file(gen_out + ".json", sidecar_text.data(), sidecar_text.size());
            std::cout << sidecar.ptr << "\n";
            return 0;
        }

        if (bench_cmd->parsed()) {
            std::string grid = bench_grid;
            if (!grid.empty() && grid[0] == '@') {
                auto bytes = read_file_bytes(grid.substr(1));
                grid.assign(bytes.begin(), bytes.end());
            }
            qkm_options opts = bench_common.to_options();
            OwnedString out;
            qkm_status st = qkm_bench(grid.c_str(), bench_trials, &opts, &out.ptr);
            if (st != QKM_OK) return fail(st);
            if (bench_out.empty()) {
                std::cout << out.ptr;
            } else {
                write_file(bench_out, out.ptr, std::string(out.ptr).size());
            }
            return 0;
        }
    } catch (const CLI::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 0;
}
