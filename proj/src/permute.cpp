#include "permabench/permute.hpp"

#include <algorithm>
#include <cassert>

#include "permabench/rng.hpp"

namespace permabench {

void shuffle_row(std::span<uint32_t> row, uint64_t seed, uint64_t row_index) {
    SplitMix64 rng{mix64(seed ^ row_index)};
    for (size_t i = row.size() - 1; i > 0; --i) {
        const uint32_t j = rng.bounded(uint32_t(i + 1));
        std::swap(row[i], row[j]);
    }
}

PermutationBatch generate_batch(const Grouping& grouping, uint32_t n_extra,
                                uint64_t seed) {
    const uint32_t n_dims = grouping.n_dims();
    PermutationBatch batch;
    batch.n_perms = n_extra + 1;
    batch.n_dims = n_dims;
    batch.source_seed = seed;
    batch.labels.resize(uint64_t(batch.n_perms) * n_dims);

    std::copy(grouping.labels.begin(), grouping.labels.end(), batch.row(0).begin());
    for (uint32_t p = 1; p < batch.n_perms; ++p) {
        auto row = batch.row(p);
        std::copy(grouping.labels.begin(), grouping.labels.end(), row.begin());
        shuffle_row(row, seed, p);
    }
    return batch;
}

}  // namespace permabench
