#pragma once

#include <cstdint>

namespace adtcap {

/// splitmix64: tiny seedable generator with platform-independent output,
/// so serialized generated networks are byte-identical everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound); bound > 0. Rejection-free modulo is fine here:
    /// bounds are tiny compared to 2^64, bias is unobservable at our scales
    /// and, more importantly, the mapping is fixed for reproducibility.
    uint64_t below(uint64_t bound) { return next() % bound; }

    /// Uniform in [lo, hi] inclusive.
    uint64_t range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

}  // namespace adtcap
