#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nehari {

/// Worker count for independent task ladders: the NEHARI_WORKERS environment
/// variable, default 1 (sequential). Tasks write to preassigned slots, so
/// results do not depend on the pool size.
inline std::size_t worker_count()
{
    if (const char* env = std::getenv("NEHARI_WORKERS")) {
        const long n = std::atol(env);
        if (n > 1) return static_cast<std::size_t>(n);
    }
    return 1;
}

/// Run fn(0..n-1), possibly across a bounded pool of threads.
template <class Fn>
void parallel_for_each(std::size_t n, Fn&& fn)
{
    const std::size_t workers = std::min(worker_count(), n == 0 ? std::size_t{1} : n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t next = 0;
    std::mutex mu;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= n) return;
                    i = next++;
                }
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace nehari
