#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "permabench/core.hpp"

namespace permabench {

enum class KernelKind { brute, tiled, two_level };

std::string_view kernel_name(KernelKind k);
std::optional<KernelKind> kernel_from_name(std::string_view name);

// Within-group sum of squares for one grouping row: sum over same-group pairs
// (row < col) of mat[row][col]^2 * inv_group_sizes[group]. fp32 elements,
// fp64 accumulation.
double sw_brute_force(const DistanceMatrix& mat, std::span<const uint32_t> grouping_row,
                      std::span<const double> inv_group_sizes);

// Same pair coverage as sw_brute_force, visited in TILE x TILE blocks of the
// upper triangle; the reciprocal group size is applied once per (row, tile)
// instead of once per pair.
double sw_tiled(const DistanceMatrix& mat, std::span<const uint32_t> grouping_row,
                std::span<const double> inv_group_sizes, TileConfig cfg);

// Same value contract as sw_brute_force, computed by splitting the flattened
// upper-triangle pair space across `workers` private accumulators that are
// combined in worker-index order. Reproducible for a fixed worker count.
double sw_two_level(const DistanceMatrix& mat, std::span<const uint32_t> grouping_row,
                    std::span<const double> inv_group_sizes, unsigned workers);

// Applies the selected kernel to every row of the batch. Permutations are
// distributed across workers for brute/tiled; the two-level kernel instead
// parallelizes over matrix cells within each permutation. Each result goes to
// its own output slot; brute/tiled results are bit-exact for any worker count.
SwResults sw_batch(const DistanceMatrix& mat, const PermutationBatch& batch,
                   const Grouping& grouping, KernelKind kernel, TileConfig cfg,
                   unsigned workers);

}  // namespace permabench
