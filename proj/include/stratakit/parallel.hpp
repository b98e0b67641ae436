#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace stratakit {

/// Worker count: STRATA_KIT_THREADS if set, else hardware concurrency.
inline unsigned thread_budget() {
    if (const char* env = std::getenv("STRATA_KIT_THREADS")) {
        long n = std::atol(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

/// Run fn(i) for i in [0, n).  Results must be written to preallocated slots
/// indexed by i so the outcome is independent of scheduling.  Exceptions are
/// collected and the first one rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    unsigned workers = thread_budget();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace stratakit
