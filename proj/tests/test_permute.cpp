#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "fixtures.hpp"
#include "permabench/permute.hpp"

using namespace permabench;

TEST_CASE("generate_batch with n_extra=0 is the observed grouping only") {
    const auto g = fixtures::m4_grouping();
    const auto batch = generate_batch(g, 0, 123);
    CHECK(batch.n_perms == 1);
    CHECK(batch.n_dims == 4);
    CHECK(std::equal(g.labels.begin(), g.labels.end(), batch.row(0).begin()));
}

TEST_CASE("generate_batch is deterministic in (grouping, n_extra, seed)") {
    const auto g = fixtures::m4_grouping();
    const auto a = generate_batch(g, 64, 999);
    const auto b = generate_batch(g, 64, 999);
    CHECK(a.labels == b.labels);
    const auto c = generate_batch(g, 64, 1000);
    CHECK(a.labels != c.labels);
}

TEST_CASE("every row preserves the label multiset") {
    const auto g = fixtures::m4_grouping();
    const auto batch = generate_batch(g, 10000, 7);
    for (uint32_t p = 0; p < batch.n_perms; ++p) {
        const auto row = batch.row(p);
        const auto zeros = std::count(row.begin(), row.end(), 0u);
        const auto ones = std::count(row.begin(), row.end(), 1u);
        REQUIRE(zeros == 2);
        REQUIRE(ones == 2);
    }
}

TEST_CASE("row i depends only on (seed, i), not on batch size") {
    const auto g = fixtures::m4_grouping();
    const auto small = generate_batch(g, 50, 42);
    const auto large = generate_batch(g, 100, 42);
    for (uint32_t p = 0; p <= 50; ++p) {
        const auto a = small.row(p);
        const auto b = large.row(p);
        CHECK(std::equal(a.begin(), a.end(), b.begin()));
    }
}

TEST_CASE("shuffle uniformity over the 24 orderings of 4 items") {
    // 100k shuffles; each ordering within 5 sigma of the binomial expectation.
    constexpr int kShuffles = 100000;
    std::map<std::array<uint32_t, 4>, int> counts;
    for (int i = 0; i < kShuffles; ++i) {
        std::array<uint32_t, 4> row = {0, 1, 2, 3};
        shuffle_row(std::span<uint32_t>(row.data(), row.size()), 2024, uint64_t(i));
        ++counts[row];
    }
    CHECK(counts.size() == 24);
    const double p = 1.0 / 24.0;
    const double sigma = std::sqrt(p * (1.0 - p) * kShuffles);
    for (const auto& [row, count] : counts) {
        CHECK(std::fabs(count - p * kShuffles) <= 5.0 * sigma);
    }
}
