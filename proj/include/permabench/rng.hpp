#pragma once

#include <cstdint>

namespace permabench {

// SplitMix64 finalizer. Used both as the generator's output mix and to derive
// independent per-row stream seeds from (seed, row).
inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based generator: output i depends only on (state, i), so streams
// can be split freely without coordination.
struct SplitMix64 {
    uint64_t state = 0;

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        return mix64(state);
    }

    uint32_t next_u32() { return static_cast<uint32_t>(next() >> 32); }

    // Unbiased draw in [0, n), Lemire's multiply-shift with rejection.
    uint32_t bounded(uint32_t n) {
        uint32_t x = next_u32();
        uint64_t m = uint64_t(x) * n;
        auto l = static_cast<uint32_t>(m);
        if (l < n) {
            const uint32_t t = uint32_t(-n) % n;
            while (l < t) {
                x = next_u32();
                m = uint64_t(x) * n;
                l = static_cast<uint32_t>(m);
            }
        }
        return static_cast<uint32_t>(m >> 32);
    }

    double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

    float next_unit_f32() { return float(next() >> 40) * 0x1.0p-24f; }
};

}  // namespace permabench
