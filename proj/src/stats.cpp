#include "permabench/stats.hpp"

#include <limits>

#include "permabench/permute.hpp"

namespace permabench {

double ss_total(const DistanceMatrix& mat) {
    const uint32_t n_dims = mat.n_dims;
    double sum = 0.0;
    for (uint32_t row = 0; row + 1 < n_dims; ++row) {
        const float* mat_row = mat.data.data() + uint64_t(row) * uint64_t(n_dims);
        double row_sum = 0.0;
        for (uint32_t col = row + 1; col < n_dims; ++col) {
            const double val = mat_row[col];
            row_sum += val * val;
        }
        sum += row_sum;
    }
    return sum / double(n_dims);
}

double pseudo_f(double ss_total, double s_w, uint32_t n_dims, uint32_t n_groups) {
    if (n_groups < 2 || n_dims <= n_groups)
        throw Error(errc::degenerate_design,
                    "pseudo-F needs 2 <= n_groups < n_dims, got n_groups=" +
                        std::to_string(n_groups) + " n_dims=" + std::to_string(n_dims));
    if (s_w == 0.0) return std::numeric_limits<double>::infinity();
    const double ms_between = (ss_total - s_w) / double(n_groups - 1);
    const double ms_within = s_w / double(n_dims - n_groups);
    return ms_between / ms_within;
}

PermanovaResult permanova(const DistanceMatrix& mat, const Grouping& grouping,
                          uint32_t n_perms, uint64_t seed, KernelKind kernel,
                          TileConfig cfg, unsigned workers) {
    if (n_perms < 1)
        throw Error(errc::invalid_argument, "permutation count must be >= 1");

    const PermutationBatch batch = generate_batch(grouping, n_perms - 1, seed);
    const SwResults sw = sw_batch(mat, batch, grouping, kernel, cfg, workers);

    const double sst = ss_total(mat);
    std::vector<double> f(n_perms);
    for (uint32_t p = 0; p < n_perms; ++p)
        f[p] = pseudo_f(sst, sw.values[p], mat.n_dims, grouping.n_groups);

    // Row 0 is the observed grouping; ties count with >=, infinities compare
    // equal to each other and above any finite F (IEEE semantics).
    const double f_observed = f[0];
    uint64_t count = 0;
    for (uint32_t p = 0; p < n_perms; ++p)
        if (f[p] >= f_observed) ++count;

    PermanovaResult result;
    result.f_observed = f_observed;
    result.p_value = double(count) / double(n_perms);
    result.ss_total = sst;
    result.ss_within_observed = sw.values[0];
    result.n_perms = n_perms;
    result.n_dims = mat.n_dims;
    result.n_groups = grouping.n_groups;
    return result;
}

}  // namespace permabench
