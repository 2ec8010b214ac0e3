#pragma once

#include <cstdint>

#include "permabench/core.hpp"
#include "permabench/kernels.hpp"

namespace permabench {

struct PermanovaResult {
    double f_observed = 0.0;
    double p_value = 0.0;
    double ss_total = 0.0;
    double ss_within_observed = 0.0;
    uint32_t n_perms = 0;
    uint32_t n_dims = 0;
    uint32_t n_groups = 0;
};

// Total sum of squares: (1/N) * sum over pairs (row < col) of d^2.
// Label-independent, so it is computed once per test.
double ss_total(const DistanceMatrix& mat);

// Pseudo-F ratio ((SS_T - s_W)/(a-1)) / (s_W/(N-a)). Returns +infinity when
// s_W is exactly zero so perfect within-group collapse stays comparable.
double pseudo_f(double ss_total, double s_w, uint32_t n_dims, uint32_t n_groups);

// Full permutation test: batch generation (row 0 observed), s_W per row via
// the selected kernel, pseudo-F mapping, and the permutation p-value
// |{p : F_p >= F_observed}| / n_perms. Row 0 counts itself, so p >= 1/n_perms.
PermanovaResult permanova(const DistanceMatrix& mat, const Grouping& grouping,
                          uint32_t n_perms, uint64_t seed, KernelKind kernel,
                          TileConfig cfg, unsigned workers);

}  // namespace permabench
