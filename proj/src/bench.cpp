#include "permabench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "permabench/permute.hpp"
#include "permabench/rng.hpp"

namespace permabench {

namespace {

constexpr double kChecksumRelTol = 1e-9;

bool checksums_close(double a, double b) {
    return std::fabs(a - b) <= kChecksumRelTol * std::max(std::fabs(a), std::fabs(b));
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::string fmt(const char* spec, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

}  // namespace

std::pair<DistanceMatrix, Grouping> synthesize_workload(uint32_t n_dims,
                                                        uint32_t n_groups,
                                                        uint64_t seed) {
    if (n_dims < 2)
        throw Error(errc::too_small, "workload needs n_dims >= 2");
    if (n_groups < 2 || n_groups >= n_dims)
        throw Error(errc::invalid_argument,
                    "workload needs 2 <= n_groups < n_dims, got n_groups=" +
                        std::to_string(n_groups) + " n_dims=" + std::to_string(n_dims));

    DistanceMatrix mat;
    mat.n_dims = n_dims;
    mat.data.assign(uint64_t(n_dims) * n_dims, 0.0f);
    SplitMix64 rng{mix64(seed)};
    for (uint32_t row = 0; row < n_dims; ++row) {
        float* r = mat.data.data() + uint64_t(row) * n_dims;
        for (uint32_t col = row + 1; col < n_dims; ++col) {
            const float d = rng.next_unit_f32();
            r[col] = d;
            mat.data[uint64_t(col) * n_dims + row] = d;
        }
    }

    std::vector<uint32_t> labels(n_dims);
    for (uint32_t i = 0; i < n_dims; ++i) labels[i] = i % n_groups;
    shuffle_row(labels, seed ^ 0x67726f7570696e67ULL, 0);  // "grouping" stream
    return {std::move(mat), build_grouping(labels)};
}

std::vector<BenchRecord> run_suite(const SuiteParams& params) {
    if (params.kernels.empty() || params.dims.empty() || params.perms.empty() ||
        params.workers.empty() || params.tiles.empty())
        throw Error(errc::invalid_argument, "benchmark grid has an empty axis");
    if (params.reps < 1)
        throw Error(errc::invalid_argument, "reps must be >= 1");
    for (unsigned w : params.workers)
        if (w == 0) throw Error(errc::worker_count_zero, "worker count must be >= 1");

    // Workloads and batches are reused across grid points that share the key,
    // which is what makes cross-kernel checksums comparable.
    std::map<uint32_t, std::pair<DistanceMatrix, Grouping>> workloads;
    std::map<std::pair<uint32_t, uint32_t>, PermutationBatch> batches;
    const auto workload = [&](uint32_t n_dims) -> auto& {
        auto it = workloads.find(n_dims);
        if (it == workloads.end())
            it = workloads
                     .emplace(n_dims,
                              synthesize_workload(n_dims, params.n_groups, params.seed))
                     .first;
        return it->second;
    };
    const auto batch = [&](uint32_t n_dims, uint32_t n_perms) -> auto& {
        const auto key = std::make_pair(n_dims, n_perms);
        auto it = batches.find(key);
        if (it == batches.end()) {
            const auto& [mat, grouping] = workload(n_dims);
            it = batches.emplace(key, generate_batch(grouping, n_perms - 1, params.seed))
                     .first;
        }
        return it->second;
    };

    std::vector<BenchRecord> records;
    records.reserve(size_t(params.kernels.size()) * params.dims.size() *
                    params.perms.size() * params.workers.size() * params.tiles.size() *
                    params.reps);

    for (const KernelKind kernel : params.kernels)
        for (const uint32_t n_dims : params.dims)
            for (const uint32_t n_perms : params.perms)
                for (const unsigned workers : params.workers)
                    for (const uint32_t tile : params.tiles) {
                        if (tile == 0)
                            throw Error(errc::invalid_argument, "tile must be >= 1");
                        if (n_perms < 1)
                            throw Error(errc::invalid_argument, "n_perms must be >= 1");
                        if (params.on_point) {
                            char desc[160];
                            std::snprintf(desc, sizeof desc,
                                          "%s n_dims=%u n_perms=%u workers=%u tile=%u",
                                          std::string(kernel_name(kernel)).c_str(),
                                          n_dims, n_perms, workers, tile);
                            params.on_point(desc);
                        }
                        const auto& [mat, grouping] = workload(n_dims);
                        const auto& b = batch(n_dims, n_perms);
                        const TileConfig cfg{tile};
                        for (uint32_t i = 0; i < params.warmups; ++i)
                            sw_batch(mat, b, grouping, kernel, cfg, workers);
                        for (uint32_t rep = 0; rep < params.reps; ++rep) {
                            const double t0 = now_seconds();
                            const SwResults sw =
                                sw_batch(mat, b, grouping, kernel, cfg, workers);
                            const double t1 = now_seconds();
                            double checksum = 0.0;
                            for (double v : sw.values) checksum += v;
                            BenchRecord rec;
                            rec.kernel = kernel;
                            rec.n_dims = n_dims;
                            rec.n_perms = n_perms;
                            rec.workers = workers;
                            rec.tile = tile;
                            rec.rep = rep;
                            rec.seconds = std::max(t1 - t0, 1e-9);
                            rec.checksum = checksum;
                            records.push_back(rec);
                        }
                    }
    return records;
}

std::string emit_csv(std::span<const BenchRecord> records) {
    std::string csv = "kernel,n_dims,n_perms,workers,tile,rep,seconds,checksum\n";
    char buf[192];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%u,%u,%u,%u,%u,%.9g,%.17g\n",
                      std::string(kernel_name(r.kernel)).c_str(), r.n_dims, r.n_perms,
                      r.workers, r.tile, r.rep, r.seconds, r.checksum);
        csv += buf;
    }
    return csv;
}

Summary summarize(std::span<const BenchRecord> records) {
    Summary summary;
    if (records.empty()) {
        summary.table = "no benchmark records\n";
        return summary;
    }

    // workload key -> (kernel, workers) -> seconds
    using WorkloadKey = std::pair<uint32_t, uint32_t>;
    using RowKey = std::pair<int, unsigned>;
    std::map<WorkloadKey, std::map<RowKey, std::vector<double>>> groups;
    std::map<WorkloadKey, std::pair<double, bool>> checks;  // first checksum, ok
    for (const auto& r : records) {
        const WorkloadKey wk{r.n_dims, r.n_perms};
        groups[wk][{int(r.kernel), r.workers}].push_back(r.seconds);
        auto [it, inserted] = checks.try_emplace(wk, r.checksum, true);
        if (!inserted && !checksums_close(it->second.first, r.checksum))
            it->second.second = false;
    }

    std::string table;
    char line[192];
    std::snprintf(line, sizeof line, "%-8s %-8s %-10s %-8s %-12s %-12s %-9s %s\n",
                  "n_dims", "n_perms", "kernel", "workers", "min_s", "median_s",
                  "speedup", "check");
    table += line;
    for (auto& [wk, rows] : groups) {
        const bool ok = checks[wk].second;
        if (!ok) summary.valid = false;

        // Baseline: brute force at one worker when present, else the first row.
        double baseline = 0.0;
        bool have_baseline = false;
        const auto base_it = rows.find({int(KernelKind::brute), 1u});
        if (base_it != rows.end()) {
            baseline = *std::min_element(base_it->second.begin(), base_it->second.end());
            have_baseline = true;
        }
        for (auto& [rk, secs] : rows) {
            std::sort(secs.begin(), secs.end());
            const double min_s = secs.front();
            const double median_s = secs[secs.size() / 2];
            if (!have_baseline) {
                baseline = min_s;
                have_baseline = true;
            }
            std::snprintf(line, sizeof line, "%-8u %-8u %-10s %-8u %-12s %-12s %-9s %s\n",
                          wk.first, wk.second,
                          std::string(kernel_name(KernelKind(rk.first))).c_str(),
                          rk.second, fmt("%.6g", min_s).c_str(),
                          fmt("%.6g", median_s).c_str(),
                          fmt("%.3g", baseline / min_s).c_str(),
                          ok ? "ok" : "INVALID");
            table += line;
        }
    }
    summary.table = std::move(table);
    return summary;
}

}  // namespace permabench
