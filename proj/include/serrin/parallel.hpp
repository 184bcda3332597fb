#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace serrin {

/// Evaluates fn(0), ..., fn(n-1) on up to `workers` threads and returns the
/// results in index order.  The first exception thrown by any task (lowest
/// index) is rethrown after all threads have joined.
template <class Fn>
auto parallel_map(int n, int workers, Fn&& fn) -> std::vector<decltype(fn(0))> {
    using R = decltype(fn(0));
    std::vector<R> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<int> next{0};
    auto drain = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::clamp(workers, 1, std::max(n, 1));
    if (threads == 1) {
        drain();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (int k = 0; k < threads; ++k) pool.emplace_back(drain);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace serrin
