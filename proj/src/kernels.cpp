#include "permabench/kernels.hpp"

#include <algorithm>
#include <cassert>

#include "permabench/threading.hpp"

namespace permabench {

std::string_view kernel_name(KernelKind k) {
    switch (k) {
        case KernelKind::brute: return "brute";
        case KernelKind::tiled: return "tiled";
        case KernelKind::two_level: return "two-level";
    }
    return "?";
}

std::optional<KernelKind> kernel_from_name(std::string_view name) {
    if (name == "brute") return KernelKind::brute;
    if (name == "tiled") return KernelKind::tiled;
    if (name == "two-level") return KernelKind::two_level;
    return std::nullopt;
}

double sw_brute_force(const DistanceMatrix& mat, std::span<const uint32_t> grouping_row,
                      std::span<const double> inv_group_sizes) {
    assert(grouping_row.size() == mat.n_dims);
    const uint32_t n_dims = mat.n_dims;
    double s_w = 0.0;
    for (uint32_t row = 0; row + 1 < n_dims; ++row) {  // no columns in last row
        const uint32_t group_idx = grouping_row[row];
        const double inv_gs = inv_group_sizes[group_idx];
        const float* mat_row = mat.data.data() + uint64_t(row) * uint64_t(n_dims);
        for (uint32_t col = row + 1; col < n_dims; ++col) {  // diagonal is always zero
            if (grouping_row[col] == group_idx) {
                const double val = mat_row[col];
                s_w += val * val * inv_gs;
            }
        }
    }
    return s_w;
}

double sw_tiled(const DistanceMatrix& mat, std::span<const uint32_t> grouping_row,
                std::span<const double> inv_group_sizes, TileConfig cfg) {
    assert(grouping_row.size() == mat.n_dims);
    assert(cfg.tile >= 1);
    if (mat.n_dims < 2) return 0.0;
    const uint64_t n_dims = mat.n_dims;
    const uint64_t tile = cfg.tile;
    double s_w = 0.0;
    for (uint64_t trow = 0; trow < n_dims - 1; trow += tile) {       // no columns in last row
        for (uint64_t tcol = trow + 1; tcol < n_dims; tcol += tile) {  // diagonal is always zero
            const uint64_t row_end = std::min(trow + tile, n_dims - 1);
            for (uint64_t row = trow; row < row_end; ++row) {
                const uint64_t min_col = std::max(tcol, row + 1);
                const uint64_t max_col = std::min(tcol + tile, n_dims);
                const float* mat_row = mat.data.data() + row * n_dims;
                const uint32_t group_idx = grouping_row[row];
                double local_s_w = 0.0;
                for (uint64_t col = min_col; col < max_col; ++col) {
                    if (grouping_row[col] == group_idx) {
                        const double val = mat_row[col];
                        local_s_w += val * val;
                    }
                }
                s_w += local_s_w * inv_group_sizes[group_idx];
            }
        }
    }
    return s_w;
}

namespace {

// Flattened strict-upper-triangle index space: row r owns pairs
// [pair_offset(r), pair_offset(r) + n - 1 - r).
inline uint64_t pair_offset(uint64_t n, uint64_t r) {
    return r * (n - 1) - r * (r - 1) / 2;
}

// Largest row whose offset is <= k.
inline uint32_t row_of_pair(uint64_t n, uint64_t k) {
    uint32_t lo = 0, hi = uint32_t(n - 1);
    while (lo + 1 < hi) {
        const uint32_t mid = lo + (hi - lo) / 2;
        if (pair_offset(n, mid) <= k)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Pair range [k0, k1) of one worker's share of the upper triangle.
double sw_pair_range(const DistanceMatrix& mat, std::span<const uint32_t> grouping_row,
                     std::span<const double> inv_group_sizes, uint64_t k0, uint64_t k1) {
    const uint64_t n_dims = mat.n_dims;
    double partial = 0.0;
    uint64_t k = k0;
    uint32_t row = row_of_pair(n_dims, k0);
    while (k < k1) {
        const uint64_t row_begin = pair_offset(n_dims, row);
        uint64_t col = row + 1 + (k - row_begin);
        const uint64_t col_end = std::min(n_dims, col + (k1 - k));
        const uint32_t group_idx = grouping_row[row];
        const double inv_gs = inv_group_sizes[group_idx];
        const float* mat_row = mat.data.data() + row * n_dims;
        for (; col < col_end; ++col) {
            if (grouping_row[col] == group_idx) {
                const double val = mat_row[col];
                partial += val * val * inv_gs;
            }
        }
        k = row_begin + (col_end - (row + 1));
        ++row;
    }
    return partial;
}

#ifndef NDEBUG
bool labels_in_range(std::span<const uint32_t> row, uint32_t n_groups) {
    for (uint32_t v : row)
        if (v >= n_groups) return false;
    return true;
}
#endif

}  // namespace

double sw_two_level(const DistanceMatrix& mat, std::span<const uint32_t> grouping_row,
                    std::span<const double> inv_group_sizes, unsigned workers) {
    assert(grouping_row.size() == mat.n_dims);
    if (workers == 0) throw Error(errc::worker_count_zero, "worker count must be >= 1");
    const uint64_t n_dims = mat.n_dims;
    const uint64_t total_pairs = n_dims * (n_dims - 1) / 2;
    std::vector<double> partials(workers, 0.0);
    run_on_workers(workers, [&](unsigned w) {
        const auto [k0, k1] = worker_chunk(total_pairs, workers, w);
        if (k0 < k1)
            partials[w] = sw_pair_range(mat, grouping_row, inv_group_sizes, k0, k1);
    });
    // Private partials combined in worker-index order: reproducible for a
    // fixed worker count.
    double s_w = 0.0;
    for (double p : partials) s_w += p;
    return s_w;
}

SwResults sw_batch(const DistanceMatrix& mat, const PermutationBatch& batch,
                   const Grouping& grouping, KernelKind kernel, TileConfig cfg,
                   unsigned workers) {
    if (workers == 0) throw Error(errc::worker_count_zero, "worker count must be >= 1");
    assert(batch.n_dims == mat.n_dims);
    const uint32_t n_perms = batch.n_perms;
    const std::span<const double> inv(grouping.inv_group_sizes);
#ifndef NDEBUG
    for (uint32_t p = 0; p < n_perms; ++p)
        assert(labels_in_range(batch.row(p), grouping.n_groups));
#endif

    SwResults out;
    out.values.assign(n_perms, 0.0);

    if (kernel == KernelKind::two_level) {
        // Cell-level parallelism: each worker sweeps its fixed pair range
        // through every permutation, then per-permutation partials are
        // combined in worker-index order.
        const uint64_t n_dims = mat.n_dims;
        const uint64_t total_pairs = n_dims * (n_dims - 1) / 2;
        std::vector<std::vector<double>> partials(workers);
        run_on_workers(workers, [&](unsigned w) {
            const auto [k0, k1] = worker_chunk(total_pairs, workers, w);
            auto& mine = partials[w];
            mine.assign(n_perms, 0.0);
            if (k0 >= k1) return;
            for (uint32_t p = 0; p < n_perms; ++p)
                mine[p] = sw_pair_range(mat, batch.row(p), inv, k0, k1);
        });
        for (unsigned w = 0; w < workers; ++w)
            for (uint32_t p = 0; p < n_perms; ++p) out.values[p] += partials[w][p];
        return out;
    }

    // Permutation-level parallelism: each permutation is independent, each
    // worker writes disjoint output slots.
    run_on_workers(workers, [&](unsigned w) {
        const auto [p0, p1] = worker_chunk(n_perms, workers, w);
        for (uint64_t p = p0; p < p1; ++p) {
            const auto row = batch.row(uint32_t(p));
            out.values[p] = (kernel == KernelKind::brute)
                                ? sw_brute_force(mat, row, inv)
                                : sw_tiled(mat, row, inv, cfg);
        }
    });
    return out;
}

}  // namespace permabench
