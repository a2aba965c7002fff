#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace trilam {

// Worker count resolution: explicit request, then TRILAM_THREADS, then the
// hardware count.
inline unsigned resolve_workers(unsigned requested) {
    if (requested) return requested;
    if (const char* env = std::getenv("TRILAM_THREADS"))
        if (int v = std::atoi(env); v > 0) return static_cast<unsigned>(v);
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Apply fn to every index in [0, n). Chunks are pulled off a shared counter;
// every index is visited exactly once, so per-index output is identical for
// any worker count or schedule.
template <class Fn>
void par_for(std::size_t n, unsigned workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t chunk = std::max<std::size_t>(1, n / (8 * workers));
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (;;) {
            std::size_t lo = next.fetch_add(chunk);
            if (lo >= n) return;
            std::size_t hi = std::min(n, lo + chunk);
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (std::thread& t : pool) t.join();
}

} // namespace trilam
