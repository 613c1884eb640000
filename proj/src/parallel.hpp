#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace subspace_round::detail {

/// Worker count: hardware concurrency, capped by SUBSPACE_ROUND_THREADS.
inline std::size_t worker_count() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("SUBSPACE_ROUND_THREADS")) {
        try {
            const long v = std::stol(cap);
            if (v >= 1) n = std::min(n, static_cast<std::size_t>(v));
        } catch (const std::exception&) {
        }
    }
    return n;
}

/// Calls body(i) for i in [0, count) over contiguous chunks. Each index is
/// visited exactly once, so results written per index are independent of
/// the thread count.
template <class Body>
void parallel_for(std::size_t count, Body&& body, std::size_t min_chunk = 16) {
    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, count / min_chunk));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                const std::size_t end = std::min(count, (w + 1) * chunk);
                for (std::size_t i = w * chunk; i < end; ++i) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace subspace_round::detail
