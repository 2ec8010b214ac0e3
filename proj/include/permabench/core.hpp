#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace permabench {

enum class errc {
    // matrix validation
    non_square,
    too_small,
    asymmetric_beyond_tolerance,
    nonzero_diagonal,
    non_finite_entry,
    negative_entry,
    // grouping
    single_group,
    all_singleton_degenerate,
    // kernels / stats
    worker_count_zero,
    degenerate_design,
    // io
    malformed,
    duplicate_id,
    id_mismatch,
    missing_column,
    missing_sample,
    duplicate_sample,
    size_mismatch,
    io_error,
    // membench
    allocation_failure,
    // generic precondition violation surfaced to the user
    invalid_argument,
};

class Error : public std::runtime_error {
public:
    Error(errc code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

// Square symmetric distance matrix, zero diagonal, row-major fp32 storage.
// All kernels read only the strict upper triangle.
struct DistanceMatrix {
    uint32_t n_dims = 0;
    std::vector<float> data;  // n_dims * n_dims, row-major

    const float* row(uint32_t r) const {
        return data.data() + uint64_t(r) * n_dims;
    }
    float at(uint32_t r, uint32_t c) const {
        return data[uint64_t(r) * n_dims + c];
    }
};

// Dense group labels plus derived sizes and reciprocals.
struct Grouping {
    std::vector<uint32_t> labels;          // n_dims entries in [0, n_groups)
    uint32_t n_groups = 0;
    std::vector<uint32_t> group_sizes;     // n_groups positive counts
    std::vector<double> inv_group_sizes;   // 1.0 / group_sizes[g]

    uint32_t n_dims() const { return static_cast<uint32_t>(labels.size()); }
};

// n_perms grouping rows laid out contiguously; row 0 is the observed grouping.
struct PermutationBatch {
    uint32_t n_perms = 0;
    uint32_t n_dims = 0;
    uint64_t source_seed = 0;
    std::vector<uint32_t> labels;  // n_perms * n_dims

    std::span<const uint32_t> row(uint32_t p) const {
        return {labels.data() + uint64_t(p) * n_dims, n_dims};
    }
    std::span<uint32_t> row(uint32_t p) {
        return {labels.data() + uint64_t(p) * n_dims, n_dims};
    }
};

// One partial statistic per permutation.
struct SwResults {
    std::vector<double> values;
};

struct TileConfig {
    uint32_t tile = 64;
};

inline constexpr double kSymmetryTolerance = 1e-6;

// Checks all DistanceMatrix invariants on (n_dims, data), symmetrizes by
// copying the upper triangle over the lower, and returns the owned matrix.
// Idempotent on its own output.
DistanceMatrix validate_matrix(uint32_t n_dims, std::vector<float> data);

// Maps category values to dense indices in order of first appearance and
// derives group sizes and reciprocals.
template <class T>
Grouping build_grouping(std::span<const T> categories) {
    if (categories.empty())
        throw Error(errc::invalid_argument, "grouping labels must be nonempty");
    const auto n = categories.size();
    Grouping g;
    g.labels.resize(n);
    std::unordered_map<T, uint32_t> index;
    index.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        auto [it, inserted] =
            index.try_emplace(categories[i], static_cast<uint32_t>(g.group_sizes.size()));
        if (inserted) g.group_sizes.push_back(0);
        g.labels[i] = it->second;
        ++g.group_sizes[it->second];
    }
    g.n_groups = static_cast<uint32_t>(g.group_sizes.size());
    if (g.n_groups < 2)
        throw Error(errc::single_group,
                    "grouping has a single category; need at least 2 groups");
    if (g.n_groups == n)
        throw Error(errc::all_singleton_degenerate,
                    "every object is its own group; within-group variance is undefined");
    g.inv_group_sizes.resize(g.n_groups);
    for (uint32_t k = 0; k < g.n_groups; ++k)
        g.inv_group_sizes[k] = 1.0 / double(g.group_sizes[k]);
    return g;
}

template <class T>
Grouping build_grouping(const std::vector<T>& categories) {
    return build_grouping(std::span<const T>(categories));
}

}  // namespace permabench
