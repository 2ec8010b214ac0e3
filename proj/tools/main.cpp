#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "permabench/bench.hpp"
#include "permabench/io.hpp"
#include "permabench/kernels.hpp"
#include "permabench/membench.hpp"
#include "permabench/stats.hpp"
#include "permabench/threading.hpp"

namespace {

using namespace permabench;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUserError = 2;
constexpr int kExitVerificationFailure = 3;

struct TestOptions {
    std::string matrix_path;
    std::string matrix_bin_path;
    uint32_t n_dims = 0;
    std::string metadata_path;
    std::string id_column;
    std::string group_column;
    uint32_t permutations = 999;
    uint64_t seed = 0;
    std::string kernel = "tiled";
    uint32_t tile = 64;
    unsigned workers = default_workers();
    std::string format = "json";
};

int run_test(const TestOptions& opt) {
    if (opt.matrix_path.empty() && opt.matrix_bin_path.empty()) {
        std::cerr << "error: provide --matrix or --matrix-bin\n";
        return kExitUserError;
    }

    std::vector<std::string> ids;
    DistanceMatrix mat;
    if (!opt.matrix_path.empty()) {
        LsmatData lsmat = read_lsmat(opt.matrix_path);
        ids = std::move(lsmat.ids);
        mat = std::move(lsmat.matrix);
    } else {
        if (opt.n_dims == 0) {
            std::cerr << "error: --matrix-bin requires --n-dims\n";
            return kExitUserError;
        }
        mat = read_binary_matrix(opt.matrix_bin_path, opt.n_dims);
        // A raw dump carries no sample ids; rows are addressed by index.
        ids.reserve(mat.n_dims);
        for (uint32_t i = 0; i < mat.n_dims; ++i) ids.push_back(std::to_string(i));
    }

    GroupingReadStats meta_stats;
    const Grouping grouping =
        read_grouping(opt.metadata_path, opt.id_column, opt.group_column, ids, &meta_stats);
    if (meta_stats.ignored_rows > 0)
        std::cerr << "note: ignored " << meta_stats.ignored_rows
                  << " metadata rows for samples not in the matrix\n";

    const auto kernel = kernel_from_name(opt.kernel);
    const PermanovaResult result = permanova(mat, grouping, opt.permutations, opt.seed,
                                             *kernel, TileConfig{opt.tile}, opt.workers);
    const auto format = opt.format == "json" ? ResultFormat::json : ResultFormat::tsv;
    std::cout << write_result(result, format) << "\n";
    return kExitOk;
}

struct BenchOptions {
    std::vector<std::string> kernels = {"brute", "tiled", "two-level"};
    std::vector<uint32_t> dims = {1024, 4096};
    std::vector<uint32_t> perms = {64, 256};
    std::vector<unsigned> workers_list;
    std::vector<uint32_t> tiles = {32, 64, 128};
    uint32_t reps = 3;
    uint32_t warmups = 1;
    uint64_t seed = 0;
    uint32_t groups = 10;
    std::string csv_path;
    bool selftest_corrupt = false;
};

int run_bench(const BenchOptions& opt) {
    SuiteParams params;
    for (const auto& name : opt.kernels) params.kernels.push_back(*kernel_from_name(name));
    params.dims = opt.dims;
    params.perms = opt.perms;
    params.workers = opt.workers_list;
    params.tiles = opt.tiles;
    params.reps = opt.reps;
    params.warmups = opt.warmups;
    params.seed = opt.seed;
    params.n_groups = opt.groups;
    params.on_point = [](const std::string& desc) { std::cerr << "bench: " << desc << "\n"; };

    std::vector<BenchRecord> records = run_suite(params);
    if (opt.selftest_corrupt && !records.empty())
        records.back().checksum += 1.0 + std::fabs(records.back().checksum);

    const std::string csv = emit_csv(records);
    if (!opt.csv_path.empty()) {
        std::ofstream out(opt.csv_path, std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write " << opt.csv_path << "\n";
            return kExitUserError;
        }
        out << csv;
    } else {
        std::cout << csv;
    }

    const Summary summary = summarize(records);
    std::cout << summary.table;
    if (!summary.valid) {
        std::cerr << "error: cross-kernel checksums disagree, results are INVALID\n";
        return kExitVerificationFailure;
    }
    return kExitOk;
}

struct MembenchOptions {
    uint64_t stream_n = 100000000;
    uint32_t stream_reps = 10;
    unsigned workers = default_workers();
};

int run_membench(const MembenchOptions& opt) {
    const StreamReport report = stream_run(opt.stream_n, opt.stream_reps, opt.workers);
    std::cout << format_stream_report(report);
    if (!report.validation.pass) return kExitVerificationFailure;
    return kExitOk;
}

int exit_code_for(const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PERMANOVA permutation test over precomputed distance matrices,\n"
                 "with brute-force / cache-tiled / two-level s_W kernels, a kernel\n"
                 "benchmark harness, and a STREAM-style memory bandwidth check."};
    app.require_subcommand(1);

    const std::vector<std::string> kernel_names = {"brute", "tiled", "two-level"};

    TestOptions topt;
    CLI::App* test_cmd = app.add_subcommand("test", "Run the PERMANOVA permutation test");
    test_cmd->add_option("--matrix", topt.matrix_path,
                         "Distance matrix in lsmat (tab-separated, labeled) format");
    test_cmd->add_option("--matrix-bin", topt.matrix_bin_path,
                         "Raw little-endian fp32 row-major distance matrix");
    test_cmd->add_option("--n-dims", topt.n_dims,
                         "Object count for --matrix-bin (file is n-dims^2 fp32 values)");
    test_cmd->add_option("--metadata", topt.metadata_path, "Sample metadata TSV")
        ->required();
    test_cmd->add_option("--id-column", topt.id_column, "Metadata column holding sample ids")
        ->required();
    test_cmd
        ->add_option("--group-column", topt.group_column,
                     "Metadata column holding group labels")
        ->required();
    test_cmd
        ->add_option("--permutations", topt.permutations,
                     "Total permutations, observed grouping included")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    test_cmd->add_option("--seed", topt.seed, "Permutation seed")->capture_default_str();
    test_cmd->add_option("--kernel", topt.kernel, "s_W kernel")
        ->capture_default_str()
        ->check(CLI::IsMember(kernel_names));
    test_cmd->add_option("--tile", topt.tile, "Tile edge for the tiled kernel")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    test_cmd->add_option("--workers", topt.workers, "Worker thread count")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    test_cmd->add_option("--format", topt.format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "tsv"}));

    BenchOptions bopt;
    bopt.workers_list = {1};
    if (default_workers() > 1) bopt.workers_list.push_back(default_workers());
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Time the s_W kernels over a synthetic workload grid");
    bench_cmd->add_option("--kernels", bopt.kernels, "Kernels to time")
        ->delimiter(',')
        ->capture_default_str()
        ->check(CLI::IsMember(kernel_names));
    bench_cmd->add_option("--dims", bopt.dims, "Matrix sizes (objects)")
        ->delimiter(',')
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--perms", bopt.perms, "Permutation counts")
        ->delimiter(',')
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--workers-list", bopt.workers_list, "Worker counts")
        ->delimiter(',')
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--tiles", bopt.tiles, "Tile sizes for the tiled kernel")
        ->delimiter(',')
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--reps", bopt.reps, "Timed repetitions per grid point")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--warmups", bopt.warmups, "Untimed warmup runs per grid point")
        ->capture_default_str();
    bench_cmd->add_option("--seed", bopt.seed, "Workload/permutation seed")
        ->capture_default_str();
    bench_cmd->add_option("--groups", bopt.groups, "Group count for synthetic workloads")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--csv", bopt.csv_path,
                          "Write records to this CSV file instead of stdout");
    bench_cmd->add_flag("--selftest-corrupt-checksum", bopt.selftest_corrupt)->group("");

    MembenchOptions mopt;
    CLI::App* membench_cmd = app.add_subcommand(
        "membench", "STREAM-style memory bandwidth microbenchmark (Copy/Scale/Add/Triad)");
    membench_cmd->add_option("--stream-n", mopt.stream_n, "Elements per fp64 array")
        ->capture_default_str();
    membench_cmd->add_option("--stream-reps", mopt.stream_reps, "Timed passes per kernel")
        ->capture_default_str();
    membench_cmd->add_option("--workers", mopt.workers, "Worker thread count")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUserError;
    }

    try {
        if (app.got_subcommand(test_cmd)) return run_test(topt);
        if (app.got_subcommand(bench_cmd)) return run_bench(bopt);
        if (app.got_subcommand(membench_cmd)) return run_membench(mopt);
    } catch (const Error& e) {
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
