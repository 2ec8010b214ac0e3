#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "permabench/core.hpp"

namespace fixtures {

// 4-object fixture: d01 = d23 = 1, all cross-group distances 2,
// groups {0,1} and {2,3}. By hand: s_W = 1, SS_T = 4.5, F = 7.
inline permabench::DistanceMatrix m4() {
    permabench::DistanceMatrix m;
    m.n_dims = 4;
    m.data = {
        0, 1, 2, 2,  //
        1, 0, 2, 2,  //
        2, 2, 0, 1,  //
        2, 2, 1, 0,  //
    };
    return m;
}

inline permabench::Grouping m4_grouping() {
    return permabench::build_grouping(std::vector<uint32_t>{0, 0, 1, 1});
}

struct Instance {
    permabench::DistanceMatrix mat;
    permabench::Grouping grouping;
    uint32_t tile = 1;
};

// Symmetric matrix with zero diagonal and the given entry generator.
template <class Gen>
permabench::DistanceMatrix random_matrix(uint32_t n, Gen&& entry) {
    permabench::DistanceMatrix m;
    m.n_dims = n;
    m.data.assign(uint64_t(n) * n, 0.0f);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j) {
            const float d = entry();
            m.data[uint64_t(i) * n + j] = d;
            m.data[uint64_t(j) * n + i] = d;
        }
    return m;
}

// Labels covering every group at least once, shuffled.
inline std::vector<uint32_t> random_labels(std::mt19937_64& rng, uint32_t n,
                                           uint32_t n_groups) {
    std::vector<uint32_t> labels(n);
    for (uint32_t i = 0; i < n_groups; ++i) labels[i] = i;
    std::uniform_int_distribution<uint32_t> pick(0, n_groups - 1);
    for (uint32_t i = n_groups; i < n; ++i) labels[i] = pick(rng);
    std::shuffle(labels.begin(), labels.end(), rng);
    return labels;
}

// Random instance with n_dims in [3, max_n], n_groups in [2, max_groups],
// distances uniform in [0, 10), tile in [1, n_dims + 8].
inline Instance random_instance(std::mt19937_64& rng, uint32_t max_n = 64,
                                uint32_t max_groups = 5) {
    std::uniform_int_distribution<uint32_t> n_dist(3, max_n);
    const uint32_t n = n_dist(rng);
    std::uniform_int_distribution<uint32_t> g_dist(2, std::min(max_groups, n - 1));
    const uint32_t a = g_dist(rng);
    std::uniform_real_distribution<float> d_dist(0.0f, 10.0f);
    Instance inst;
    inst.mat = random_matrix(n, [&] { return d_dist(rng); });
    inst.grouping = permabench::build_grouping(random_labels(rng, n, a));
    inst.tile = std::uniform_int_distribution<uint32_t>(1, n + 8)(rng);
    return inst;
}

// Euclidean distances between random points in R^3. For such matrices the
// between-group sum of squares is nonnegative, so SS_W <= SS_T holds; an
// arbitrary symmetric nonnegative matrix does not guarantee that.
inline Instance random_euclidean_instance(std::mt19937_64& rng, uint32_t max_n = 32,
                                          uint32_t max_groups = 5) {
    std::uniform_int_distribution<uint32_t> n_dist(3, max_n);
    const uint32_t n = n_dist(rng);
    std::uniform_int_distribution<uint32_t> g_dist(2, std::min(max_groups, n - 1));
    const uint32_t a = g_dist(rng);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::vector<std::array<double, 3>> pts(n);
    for (auto& p : pts) p = {coord(rng), coord(rng), coord(rng)};

    Instance inst;
    inst.mat.n_dims = n;
    inst.mat.data.assign(uint64_t(n) * n, 0.0f);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j) {
            const double dx = pts[i][0] - pts[j][0];
            const double dy = pts[i][1] - pts[j][1];
            const double dz = pts[i][2] - pts[j][2];
            const auto d = float(std::sqrt(dx * dx + dy * dy + dz * dz));
            inst.mat.data[uint64_t(i) * n + j] = d;
            inst.mat.data[uint64_t(j) * n + i] = d;
        }
    inst.grouping = permabench::build_grouping(random_labels(rng, n, a));
    inst.tile = std::uniform_int_distribution<uint32_t>(1, n + 8)(rng);
    return inst;
}

// Distances on the dyadic grid k/64, k in [0, 640): scaling by 0.5, 2 or 10
// stays exactly representable in fp32, so scale-law checks isolate
// accumulation effects from element rounding.
inline Instance random_dyadic_instance(std::mt19937_64& rng, uint32_t max_n = 64,
                                       uint32_t max_groups = 5) {
    std::uniform_int_distribution<uint32_t> n_dist(3, max_n);
    const uint32_t n = n_dist(rng);
    std::uniform_int_distribution<uint32_t> g_dist(2, std::min(max_groups, n - 1));
    const uint32_t a = g_dist(rng);
    std::uniform_int_distribution<uint32_t> k_dist(0, 639);
    Instance inst;
    inst.mat = random_matrix(n, [&] { return float(k_dist(rng)) / 64.0f; });
    inst.grouping = permabench::build_grouping(random_labels(rng, n, a));
    inst.tile = std::uniform_int_distribution<uint32_t>(1, n + 8)(rng);
    return inst;
}

}  // namespace fixtures
