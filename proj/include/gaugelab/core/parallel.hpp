#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "gaugelab/core/errors.hpp"

namespace gaugelab {

/// Worker count for data-parallel scans: GAUGELAB_THREADS if set, else the
/// hardware concurrency.
inline unsigned configured_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("GAUGELAB_THREADS");
    if (env == nullptr || *env == '\0') return hw;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw UsageError(std::string("GAUGELAB_THREADS: expected a positive integer, got '") + env + "'");
    return static_cast<unsigned>(v);
}

/// Runs body(i) for i in [0, n) on up to `threads` workers, each owning a
/// contiguous block. Callers write results by index, so output order is the
/// input order regardless of scheduling.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t block = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::size_t lo = w * block;
                const std::size_t hi = std::min(n, lo + block);
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace gaugelab
