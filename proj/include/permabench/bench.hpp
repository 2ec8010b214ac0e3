#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "permabench/core.hpp"
#include "permabench/kernels.hpp"

namespace permabench {

// One timing observation. Only `seconds` varies between identical runs.
struct BenchRecord {
    KernelKind kernel = KernelKind::brute;
    uint32_t n_dims = 0;
    uint32_t n_perms = 0;
    unsigned workers = 1;
    uint32_t tile = 0;
    uint32_t rep = 0;
    double seconds = 0.0;
    double checksum = 0.0;  // sum of SwResults values, cross-kernel verifiable
};

struct SuiteParams {
    std::vector<KernelKind> kernels;
    std::vector<uint32_t> dims;
    std::vector<uint32_t> perms;
    std::vector<unsigned> workers;
    std::vector<uint32_t> tiles;
    uint32_t reps = 3;
    uint32_t warmups = 1;
    uint64_t seed = 0;
    uint32_t n_groups = 10;
    // Called once per grid point before it runs, with a short description.
    std::function<void(const std::string&)> on_point;
};

inline SuiteParams default_suite(unsigned max_workers) {
    SuiteParams p;
    p.kernels = {KernelKind::brute, KernelKind::tiled, KernelKind::two_level};
    p.dims = {1024, 4096};
    p.perms = {64, 256};
    p.workers = {1};
    if (max_workers > 1) p.workers.push_back(max_workers);
    p.tiles = {32, 64, 128};
    return p;
}

// Deterministic synthetic stand-in for a real distance matrix: symmetric,
// zero diagonal, entries in [0,1); labels round-robin then shuffled.
std::pair<DistanceMatrix, Grouping> synthesize_workload(uint32_t n_dims,
                                                        uint32_t n_groups,
                                                        uint64_t seed);

// Runs the full kernels x dims x perms x workers x tiles cross product.
// Per grid point: `warmups` untimed sw_batch calls, then `reps` timed ones.
// Only sw_batch is inside the timed region.
std::vector<BenchRecord> run_suite(const SuiteParams& params);

// Header `kernel,n_dims,n_perms,workers,tile,rep,seconds,checksum`, one row
// per record in grid order, then rep.
std::string emit_csv(std::span<const BenchRecord> records);

struct Summary {
    std::string table;
    bool valid = true;  // false when checksums disagree within a workload
};

// Per (n_dims, n_perms) workload and (kernel, workers) group: min/median
// seconds and speedup vs the brute-force single-worker baseline. Flags the
// workload INVALID when checksums disagree beyond relative 1e-9.
Summary summarize(std::span<const BenchRecord> records);

}  // namespace permabench
