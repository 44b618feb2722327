#ifndef GRAZE_PARALLEL_HPP
#define GRAZE_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace graze {

// Static-chunked parallel loop; each index writes only its own slot, so
// results are bit-identical regardless of thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                         unsigned threads = 0) {
    if (threads == 0) {
        threads = std::thread::hardware_concurrency();
        if (threads == 0) threads = 4;
        if (threads > 16) threads = 16;
    }
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (threads > n) threads = (unsigned)n;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr err;
    std::mutex err_mtx;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t i = t; i < n; i += threads) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace graze

#endif
