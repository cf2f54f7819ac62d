#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace pcbz {

/// Worker count used when the caller does not specify one: PCBZ_THREADS if
/// set to a positive integer, otherwise the hardware concurrency.
inline unsigned default_workers() {
    if (const char* env = std::getenv("PCBZ_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Number of threads parallel_for actually uses for `count` tasks.
inline unsigned effective_workers(std::size_t count, unsigned workers) {
    return static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
}

/// Calls fn(i, w) for every i in [0, count) on up to `workers` threads, where
/// w < effective_workers(count, workers) identifies the calling thread (for
/// per-thread scratch). Tasks are claimed from a shared counter; callers
/// write results by index, so output never depends on scheduling. The first
/// exception (lowest index) is rethrown after all workers finish.
template <class Fn>
void parallel_for_indexed(std::size_t count, unsigned workers, Fn&& fn) {
    const unsigned threads = effective_workers(count, workers);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i, 0u);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::exception_ptr first_error;
    std::size_t first_index = count;
    auto worker = [&](unsigned w) {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                fn(i, w);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < first_index) {
                    first_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    pool.clear();
    if (first_error) std::rethrow_exception(first_error);
}

template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    parallel_for_indexed(count, workers, [&fn](std::size_t i, unsigned) { fn(i); });
}

}  // namespace pcbz
