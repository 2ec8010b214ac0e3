#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace permabench {

inline unsigned default_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1u : n;
}

// Contiguous chunk [begin, end) of an index space of `total` items for worker
// w of `workers`. Balanced: sizes differ by at most one.
inline std::pair<uint64_t, uint64_t> worker_chunk(uint64_t total, unsigned workers,
                                                  unsigned w) {
    const uint64_t base = total / workers;
    const uint64_t rem = total % workers;
    const uint64_t begin = uint64_t(w) * base + (w < rem ? w : rem);
    const uint64_t end = begin + base + (w < rem ? 1 : 0);
    return {begin, end};
}

// Runs fn(w) for w in [0, workers); worker 0 executes on the calling thread.
// Joins everything before returning; the lowest-index worker exception wins.
template <class Fn>
void run_on_workers(unsigned workers, Fn&& fn) {
    if (workers <= 1) {
        fn(0u);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back([&fn, &errors, w] {
            try {
                fn(w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    try {
        fn(0u);
    } catch (...) {
        errors[0] = std::current_exception();
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace permabench
