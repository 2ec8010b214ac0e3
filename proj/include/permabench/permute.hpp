#pragma once

#include <cstdint>
#include <span>

#include "permabench/core.hpp"

namespace permabench {

// In-place Fisher-Yates shuffle driven by a stream derived from
// mix64(seed ^ row_index): the result depends only on (seed, row_index),
// never on call order.
void shuffle_row(std::span<uint32_t> row, uint64_t seed, uint64_t row_index);

// Batch of n_extra + 1 label rows: row 0 is the observed grouping verbatim,
// rows 1..n_extra are independent uniform shuffles of it.
PermutationBatch generate_batch(const Grouping& grouping, uint32_t n_extra,
                                uint64_t seed);

}  // namespace permabench
