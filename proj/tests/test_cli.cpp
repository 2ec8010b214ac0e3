#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstring>
#include <string>
#include <sys/wait.h>

#include "test_util.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs the built CLI with stdout captured; stderr goes to /dev/null unless
// merge_stderr is set.
CliResult run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string(PERMABENCH_CLI_PATH) + " " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    CliResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.out.append(buf.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

const char* kLsmat = "\ta\tb\tc\td\na\t0\t1\t2\t2\nb\t1\t0\t2\t2\nc\t2\t2\t0\t1\nd\t2\t2\t1\t0\n";
const char* kMeta = "sample\tgroup\na\tx\nb\tx\nc\ty\nd\ty\n";

std::string test_args(const TempDir& tmp, const std::string& extra) {
    const auto matrix = tmp.file("m.lsmat", kLsmat);
    const auto meta = tmp.file("meta.tsv", kMeta);
    return "test --matrix " + matrix.string() + " --metadata " + meta.string() +
           " --id-column sample --group-column group " + extra;
}

}  // namespace

TEST_CASE("cli test: single-permutation run gives p = 1") {
    TempDir tmp;
    const auto r = run_cli(test_args(tmp, "--permutations 1"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"p_value\": 1") != std::string::npos);
    CHECK(r.out.find("\"test_statistic\": 7") != std::string::npos);
    CHECK(r.out.find("\"method\": \"PERMANOVA\"") != std::string::npos);
}

TEST_CASE("cli test: output is byte-identical across runs") {
    TempDir tmp;
    const auto args = test_args(tmp, "--permutations 200 --seed 11 --workers 2");
    const auto r1 = run_cli(args);
    const auto r2 = run_cli(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);
    CHECK(!r1.out.empty());
}

TEST_CASE("cli test: kernels agree end to end") {
    TempDir tmp;
    const auto brute = run_cli(test_args(tmp, "--permutations 100 --kernel brute"));
    const auto tiled = run_cli(test_args(tmp, "--permutations 100 --kernel tiled --tile 2"));
    const auto two = run_cli(test_args(tmp, "--permutations 100 --kernel two-level"));
    CHECK(brute.exit_code == 0);
    CHECK(brute.out == tiled.out);
    CHECK(brute.out == two.out);
}

TEST_CASE("cli test: tsv format emits two lines") {
    TempDir tmp;
    const auto r = run_cli(test_args(tmp, "--permutations 1 --format tsv"));
    CHECK(r.exit_code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 2);
    CHECK(r.out.substr(0, 6) == "method");
}

TEST_CASE("cli test: unknown kernel exits 2 and lists the valid ones") {
    TempDir tmp;
    const auto r = run_cli(test_args(tmp, "--kernel nonsense"), true);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("brute") != std::string::npos);
    CHECK(r.out.find("tiled") != std::string::npos);
    CHECK(r.out.find("two-level") != std::string::npos);
}

TEST_CASE("cli test: missing inputs exit 2 with a named file") {
    TempDir tmp;
    const auto meta = tmp.file("meta.tsv", kMeta);
    const auto r = run_cli("test --matrix /does/not/exist.lsmat --metadata " +
                               meta.string() + " --id-column sample --group-column group",
                           true);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("/does/not/exist.lsmat") != std::string::npos);

    const auto no_matrix =
        run_cli("test --metadata " + meta.string() +
                    " --id-column sample --group-column group",
                true);
    CHECK(no_matrix.exit_code == 2);
}

TEST_CASE("cli test: binary matrix path with index metadata") {
    TempDir tmp;
    const float m4[16] = {0, 1, 2, 2, 1, 0, 2, 2, 2, 2, 0, 1, 2, 2, 1, 0};
    std::string bytes(sizeof m4, '\0');
    std::memcpy(bytes.data(), m4, sizeof m4);
    const auto bin = tmp.file("m.bin", bytes);
    const auto meta = tmp.file("meta.tsv", "sample\tgroup\n0\tx\n1\tx\n2\ty\n3\ty\n");
    const auto r = run_cli("test --matrix-bin " + bin.string() +
                           " --n-dims 4 --metadata " + meta.string() +
                           " --id-column sample --group-column group --permutations 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"test_statistic\": 7") != std::string::npos);

    // two objects in two groups leaves no within-group variance: a == n
    const auto meta2 = tmp.file("meta2.tsv", "sample\tgroup\n0\tx\n1\ty\n2\tx\n3\tz\n");
    const auto r2 = run_cli("test --matrix-bin " + bin.string() +
                                " --n-dims 4 --metadata " + meta2.string() +
                                " --id-column sample --group-column group",
                            true);
    CHECK(r2.exit_code == 0);  // x has 2 members, y and z are singletons

    const auto missing = run_cli("test --matrix-bin " + bin.string() +
                                     " --metadata " + meta.string() +
                                     " --id-column sample --group-column group",
                                 true);
    CHECK(missing.exit_code == 2);  // --n-dims absent
}

TEST_CASE("cli bench: tiny grid produces CSV and a summary") {
    TempDir tmp;
    const auto csv_path = tmp.path / "records.csv";
    const auto r = run_cli(
        "bench --kernels brute,tiled --dims 128 --perms 8 --workers-list 1 --tiles 32 "
        "--reps 1 --warmups 0 --csv " +
        csv_path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("kernel") != std::string::npos);
    CHECK(r.out.find("ok") != std::string::npos);

    std::ifstream csv(csv_path);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "kernel,n_dims,n_perms,workers,tile,rep,seconds,checksum");
    int rows = 0;
    std::string line;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
}

TEST_CASE("cli bench: checksum corruption is flagged INVALID with exit 3") {
    const auto r = run_cli(
        "bench --kernels brute,tiled --dims 64 --perms 4 --workers-list 1 --tiles 16 "
        "--reps 1 --warmups 0 --selftest-corrupt-checksum",
        true);
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("INVALID") != std::string::npos);
}

TEST_CASE("cli membench: small run validates") {
    const auto r = run_cli("membench --stream-n 100000 --stream-reps 3 --workers 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("Solution Validates") != std::string::npos);
    CHECK(r.out.find("Triad:") != std::string::npos);
}

TEST_CASE("cli membench: reps below 2 exit 2") {
    const auto r = run_cli("membench --stream-n 100000 --stream-reps 1", true);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find(">= 2") != std::string::npos);
}

TEST_CASE("cli --help documents flags with defaults") {
    const auto top = run_cli("--help");
    CHECK(top.exit_code == 0);
    CHECK(top.out.find("test") != std::string::npos);
    CHECK(top.out.find("bench") != std::string::npos);
    CHECK(top.out.find("membench") != std::string::npos);

    const auto t = run_cli("test --help");
    CHECK(t.exit_code == 0);
    for (const char* flag : {"--matrix", "--matrix-bin", "--n-dims", "--metadata",
                             "--id-column", "--group-column", "--permutations", "--seed",
                             "--kernel", "--tile", "--workers", "--format"})
        CHECK(t.out.find(flag) != std::string::npos);
    CHECK(t.out.find("999") != std::string::npos);
    CHECK(t.out.find("tiled") != std::string::npos);

    const auto b = run_cli("bench --help");
    CHECK(b.exit_code == 0);
    for (const char* flag : {"--kernels", "--dims", "--perms", "--workers-list",
                             "--tiles", "--reps", "--warmups", "--seed", "--csv"})
        CHECK(b.out.find(flag) != std::string::npos);

    const auto m = run_cli("membench --help");
    CHECK(m.exit_code == 0);
    for (const char* flag : {"--stream-n", "--stream-reps", "--workers"})
        CHECK(m.out.find(flag) != std::string::npos);
    CHECK(m.out.find("100000000") != std::string::npos);
}
