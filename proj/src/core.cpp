#include "permabench/core.hpp"

#include <cmath>
#include <cstdio>

namespace permabench {

static std::string entry_msg(const char* what, uint32_t r, uint32_t c, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s at [%u,%u]: %.9g", what, r, c, v);
    return buf;
}

DistanceMatrix validate_matrix(uint32_t n_dims, std::vector<float> data) {
    if (data.size() != uint64_t(n_dims) * n_dims)
        throw Error(errc::non_square,
                    "matrix data has " + std::to_string(data.size()) +
                        " entries, expected " + std::to_string(n_dims) + "x" +
                        std::to_string(n_dims));
    if (n_dims < 2)
        throw Error(errc::too_small, "distance matrix needs at least 2 objects, got " +
                                         std::to_string(n_dims));

    const uint64_t n = n_dims;
    for (uint32_t i = 0; i < n_dims; ++i) {
        const float* row = data.data() + uint64_t(i) * n;
        for (uint32_t j = 0; j < n_dims; ++j) {
            const float v = row[j];
            if (!std::isfinite(v))
                throw Error(errc::non_finite_entry, entry_msg("non-finite entry", i, j, v));
            if (v < 0.0f)
                throw Error(errc::negative_entry, entry_msg("negative distance", i, j, v));
        }
        if (row[i] != 0.0f)
            throw Error(errc::nonzero_diagonal, entry_msg("nonzero diagonal", i, i, row[i]));
    }

    // Symmetry within absolute tolerance, then upper triangle wins.
    for (uint32_t i = 0; i < n_dims; ++i)
        for (uint32_t j = i + 1; j < n_dims; ++j) {
            const double upper = data[uint64_t(i) * n + j];
            const double lower = data[uint64_t(j) * n + i];
            if (std::fabs(upper - lower) > kSymmetryTolerance)
                throw Error(errc::asymmetric_beyond_tolerance,
                            entry_msg("asymmetry beyond 1e-6", i, j, upper - lower));
            data[uint64_t(j) * n + i] = data[uint64_t(i) * n + j];
        }

    DistanceMatrix mat;
    mat.n_dims = n_dims;
    mat.data = std::move(data);
    return mat;
}

}  // namespace permabench
