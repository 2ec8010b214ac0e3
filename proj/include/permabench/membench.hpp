#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "permabench/core.hpp"

namespace permabench {

inline constexpr double kStreamScalar = 3.0;
inline constexpr double kStreamEpsilon = 1e-13;

struct StreamKernelStats {
    const char* name = "";       // "Copy:", "Scale:", "Add:", "Triad:"
    uint64_t bytes_per_iter = 0;
    double best_rate_mb_s = 0.0;  // 1e-6 * bytes_per_iter / min_time_s
    double avg_time_s = 0.0;      // over timed iterations 2..reps
    double min_time_s = 0.0;
    double max_time_s = 0.0;
};

struct StreamValidation {
    bool pass = false;
    // average absolute relative error per array, order a, b, c
    std::array<double, 3> avg_rel_err = {0.0, 0.0, 0.0};
};

struct StreamReport {
    uint64_t n_elements = 0;
    uint32_t reps = 0;
    unsigned workers = 1;
    std::array<StreamKernelStats, 4> kernels;
    StreamValidation validation;
};

// Copy/Scale/Add/Triad over three fp64 arrays of n_elements, q = 3.0.
// One untimed priming pass faults pages in, then `reps` timed passes; the
// first timed iteration is excluded from the reported statistics, so reps
// must be >= 2. n_elements must be >= 1000.
StreamReport stream_run(uint64_t n_elements, uint32_t reps, unsigned workers);

// Recomputes the expected scalar value of each array after the priming pass
// plus `reps` timed passes and compares the average absolute relative error
// per array against 1e-13.
StreamValidation stream_validate(std::span<const double> a, std::span<const double> b,
                                 std::span<const double> c, uint64_t n_elements,
                                 uint32_t reps);

// Size/iteration banner. Pure function of the parameters so the text for any
// n_elements can be produced without allocating the arrays.
std::string format_stream_banner(uint64_t n_elements, uint32_t reps, unsigned workers);

// Function table plus validation line, STREAM 5.10 field layout.
std::string format_stream_table(const StreamReport& report);

std::string format_stream_report(const StreamReport& report);

}  // namespace permabench
