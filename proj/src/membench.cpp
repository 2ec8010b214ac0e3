#include "permabench/membench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <new>
#include <vector>

#include "permabench/threading.hpp"

namespace permabench {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Arrays {
    std::vector<double> a, b, c;
};

// One full pass of the four kernels in STREAM order; returns the wall time of
// each kernel's parallel region including the join.
std::array<double, 4> stream_pass(Arrays& ar, uint64_t n, unsigned workers) {
    const double q = kStreamScalar;
    double* a = ar.a.data();
    double* b = ar.b.data();
    double* c = ar.c.data();
    std::array<double, 4> t{};

    double t0 = now_seconds();
    run_on_workers(workers, [&](unsigned w) {
        const auto [i0, i1] = worker_chunk(n, workers, w);
        for (uint64_t i = i0; i < i1; ++i) c[i] = a[i];
    });
    t[0] = now_seconds() - t0;

    t0 = now_seconds();
    run_on_workers(workers, [&](unsigned w) {
        const auto [i0, i1] = worker_chunk(n, workers, w);
        for (uint64_t i = i0; i < i1; ++i) b[i] = q * c[i];
    });
    t[1] = now_seconds() - t0;

    t0 = now_seconds();
    run_on_workers(workers, [&](unsigned w) {
        const auto [i0, i1] = worker_chunk(n, workers, w);
        for (uint64_t i = i0; i < i1; ++i) c[i] = a[i] + b[i];
    });
    t[2] = now_seconds() - t0;

    t0 = now_seconds();
    run_on_workers(workers, [&](unsigned w) {
        const auto [i0, i1] = worker_chunk(n, workers, w);
        for (uint64_t i = i0; i < i1; ++i) a[i] = b[i] + q * c[i];
    });
    t[3] = now_seconds() - t0;
    return t;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

constexpr const char* kHline = "-------------------------------------------------------------\n";
constexpr const char* kLabels[4] = {"Copy:      ", "Scale:     ", "Add:       ",
                                    "Triad:     "};

}  // namespace

StreamValidation stream_validate(std::span<const double> a, std::span<const double> b,
                                 std::span<const double> c, uint64_t n_elements,
                                 uint32_t reps) {
    // Expected scalar values after the priming pass plus `reps` timed passes.
    double aj = 1.0, bj = 2.0, cj = 0.0;
    for (uint32_t k = 0; k < reps + 1; ++k) {
        cj = aj;
        bj = kStreamScalar * cj;
        cj = aj + bj;
        aj = bj + kStreamScalar * cj;
    }

    double sum_a = 0.0, sum_b = 0.0, sum_c = 0.0;
    for (uint64_t i = 0; i < n_elements; ++i) sum_a += std::fabs(a[i] - aj);
    for (uint64_t i = 0; i < n_elements; ++i) sum_b += std::fabs(b[i] - bj);
    for (uint64_t i = 0; i < n_elements; ++i) sum_c += std::fabs(c[i] - cj);

    StreamValidation v;
    v.avg_rel_err[0] = sum_a / double(n_elements) / std::fabs(aj);
    v.avg_rel_err[1] = sum_b / double(n_elements) / std::fabs(bj);
    v.avg_rel_err[2] = sum_c / double(n_elements) / std::fabs(cj);
    v.pass = v.avg_rel_err[0] < kStreamEpsilon && v.avg_rel_err[1] < kStreamEpsilon &&
             v.avg_rel_err[2] < kStreamEpsilon;
    return v;
}

StreamReport stream_run(uint64_t n_elements, uint32_t reps, unsigned workers) {
    if (n_elements < 1000)
        throw Error(errc::invalid_argument, "stream array size must be >= 1000");
    if (reps < 2)
        throw Error(errc::invalid_argument,
                    "stream reps must be >= 2, the first iteration is excluded");
    if (workers == 0)
        throw Error(errc::worker_count_zero, "worker count must be >= 1");

    Arrays ar;
    try {
        ar.a.resize(n_elements);
        ar.b.resize(n_elements);
        ar.c.resize(n_elements);
    } catch (const std::bad_alloc&) {
        throw Error(errc::allocation_failure,
                    "cannot allocate 3 x " + std::to_string(n_elements) +
                        " fp64 elements (" +
                        std::to_string(3 * n_elements * sizeof(double) >> 20) + " MiB)");
    }

    // First touch with the same partition the kernels use, then one untimed
    // priming pass so page faults stay out of the timed region.
    run_on_workers(workers, [&](unsigned w) {
        const auto [i0, i1] = worker_chunk(n_elements, workers, w);
        for (uint64_t i = i0; i < i1; ++i) {
            ar.a[i] = 1.0;
            ar.b[i] = 2.0;
            ar.c[i] = 0.0;
        }
    });
    stream_pass(ar, n_elements, workers);

    std::vector<std::array<double, 4>> times(reps);
    for (uint32_t k = 0; k < reps; ++k) times[k] = stream_pass(ar, n_elements, workers);

    StreamReport report;
    report.n_elements = n_elements;
    report.reps = reps;
    report.workers = workers;
    const uint64_t bytes[4] = {2 * sizeof(double) * n_elements,
                               2 * sizeof(double) * n_elements,
                               3 * sizeof(double) * n_elements,
                               3 * sizeof(double) * n_elements};
    for (int j = 0; j < 4; ++j) {
        auto& ks = report.kernels[j];
        ks.name = kLabels[j];
        ks.bytes_per_iter = bytes[j];
        double sum = 0.0, mn = times[1][j], mx = times[1][j];
        for (uint32_t k = 1; k < reps; ++k) {  // first timed iteration excluded
            const double t = std::max(times[k][j], 1e-9);
            sum += t;
            mn = std::min(mn, t);
            mx = std::max(mx, t);
        }
        ks.avg_time_s = sum / double(reps - 1);
        ks.min_time_s = std::max(mn, 1e-9);
        ks.max_time_s = mx;
        ks.best_rate_mb_s = 1.0e-6 * double(ks.bytes_per_iter) / ks.min_time_s;
    }
    report.validation = stream_validate(ar.a, ar.b, ar.c, n_elements, reps);
    return report;
}

std::string format_stream_banner(uint64_t n_elements, uint32_t reps, unsigned workers) {
    const double bytes_per_array = double(sizeof(double)) * double(n_elements);
    std::string text;
    char buf[160];
    text += kHline;
    std::snprintf(buf, sizeof buf, "This system uses %d bytes per array element.\n",
                  int(sizeof(double)));
    text += buf;
    text += kHline;
    std::snprintf(buf, sizeof buf, "Array size = %llu (elements), Offset = %d (elements)\n",
                  static_cast<unsigned long long>(n_elements), 0);
    text += buf;
    std::snprintf(buf, sizeof buf, "Memory per array = %.1f MiB (= %.1f GiB).\n",
                  bytes_per_array / 1024.0 / 1024.0,
                  bytes_per_array / 1024.0 / 1024.0 / 1024.0);
    text += buf;
    std::snprintf(buf, sizeof buf, "Total memory required = %.1f MiB (= %.1f GiB).\n",
                  3.0 * bytes_per_array / 1024.0 / 1024.0,
                  3.0 * bytes_per_array / 1024.0 / 1024.0 / 1024.0);
    text += buf;
    std::snprintf(buf, sizeof buf, "Each kernel will be executed %u times.\n", reps);
    text += buf;
    text += " The *best* time for each kernel (excluding the first iteration)\n";
    text += " will be used to compute the reported bandwidth.\n";
    text += kHline;
    std::snprintf(buf, sizeof buf, "Number of Threads requested = %u\n", workers);
    text += buf;
    std::snprintf(buf, sizeof buf, "Number of Threads counted = %u\n", workers);
    text += buf;
    return text;
}

std::string format_stream_table(const StreamReport& report) {
    std::string text;
    char buf[160];
    text += kHline;
    text += "Function    Best Rate MB/s  Avg time     Min time     Max time\n";
    for (const auto& ks : report.kernels) {
        std::snprintf(buf, sizeof buf, "%s%12.1f  %11.6f  %11.6f  %11.6f\n", ks.name,
                      ks.best_rate_mb_s, ks.avg_time_s, ks.min_time_s, ks.max_time_s);
        text += buf;
    }
    text += kHline;
    const auto& v = report.validation;
    if (v.pass) {
        text += "Solution Validates: avg error less than " +
                fmt("%e", kStreamEpsilon) + " on all three arrays\n";
    } else {
        const char* names[3] = {"a[]", "b[]", "c[]"};
        for (int i = 0; i < 3; ++i) {
            if (v.avg_rel_err[i] < kStreamEpsilon) continue;
            text += std::string("Failed Validation on array ") + names[i] +
                    ", AvgRelAbsErr > epsilon (" + fmt("%e", kStreamEpsilon) + ")\n";
            text += "     AvgRelAbsErr = " + fmt("%e", v.avg_rel_err[i]) + "\n";
        }
    }
    text += kHline;
    return text;
}

std::string format_stream_report(const StreamReport& report) {
    return format_stream_banner(report.n_elements, report.reps, report.workers) +
           format_stream_table(report);
}

}  // namespace permabench
