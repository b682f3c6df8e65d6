#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace warcast {

/// Worker count for cell-parallel loops: hardware concurrency, capped by the
/// SCORE_THREADS environment variable when set to a positive integer.
inline unsigned score_threads() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("SCORE_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0)
            n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

/// Run fn(i) for i in [0, count) across worker threads. Results must be
/// written to pre-sized slots indexed by i, which keeps output independent
/// of the schedule. The first exception thrown by any worker is rethrown.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned workers = std::min<std::size_t>(score_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace warcast
