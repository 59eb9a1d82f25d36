#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace randsum {

// Worker cap from RANDSUM_THREADS; 0 or unset means use all hardware threads.
inline int thread_count() {
    if (const char* env = std::getenv("RANDSUM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<int>(std::min(v, 1024L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Static block split of [0, count).  Each index is handled exactly once and
// fn must write only to slots it owns, so results are identical for any
// worker count.
template <class Fn>
void parallel_for(std::int64_t count, Fn&& fn) {
    if (count <= 0) return;
    const int workers =
        static_cast<int>(std::min<std::int64_t>(thread_count(), count));
    if (workers <= 1) {
        fn(std::int64_t{0}, count);
        return;
    }
    const std::int64_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                fn(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace randsum
