#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace boxpoly {

// Seeded 64-bit PRNG. splitmix64: state advances by the golden-gamma constant,
// output is a finalizing mix of the new state. Substreams are derived by
// hashing a stream id into the seed, so independent components of a generator
// draw from independent deterministic sequences.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). n = 0 is a caller bug; returns next() % n (documented
    // so other implementations can reproduce instances bit-exactly).
    std::uint64_t bounded(std::uint64_t n) { return next() % n; }

    // Integer in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(bounded(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Derived substream: seed' = mix(seed, id) where mix runs one splitmix
    // step on seed ^ (id * golden gamma).
    SplitMix64 substream(std::uint64_t id) const {
        SplitMix64 s(state_ ^ (id * 0x9e3779b97f4a7c15ULL));
        return SplitMix64(s.next());
    }

private:
    std::uint64_t state_;
};

// Floats are printed with 17 significant digits so round-trips are exact and
// output is byte-stable across runs.
inline std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

inline unsigned worker_count() {
    if (const char* env = std::getenv("BOXPOLY_THREADS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1u : hc;
}

// Runs fn(i) for i in [0, n). Chunks are assigned statically so the work
// distribution is deterministic; results must be written to disjoint slots.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace boxpoly
