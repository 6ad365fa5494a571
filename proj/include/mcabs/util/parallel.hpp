#ifndef MCABS_UTIL_PARALLEL_HPP
#define MCABS_UTIL_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mcabs {

/// Worker count: MCABS_THREADS when set, otherwise hardware concurrency.
inline unsigned thread_count() {
    if (const char* env = std::getenv("MCABS_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs fn(begin, end) over disjoint chunks of [0, n). The first raised
/// exception is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t n, Fn fn) {
    const unsigned workers = std::min<std::size_t>(thread_count(), n ? n : 1);
    if (workers <= 1 || n < 2) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mtx;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard lock(error_mtx);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace mcabs

#endif
