#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace frog {

/// Run fn(trial) for trial in [0, trials) on a bounded pool.  Workers
/// claim indices from a shared counter and write to disjoint slots, so
/// results do not depend on the worker count.
inline void parallel_for_trials(long long trials, int workers,
                                const std::function<void(long long)>& fn) {
    if (workers <= 1 || trials <= 1) {
        for (long long t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<long long> next{0};
    auto body = [&] {
        while (true) {
            long long t = next.fetch_add(1);
            if (t >= trials) return;
            fn(t);
        }
    };
    int n = workers;
    if (n > trials) n = static_cast<int>(trials);
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int i = 0; i < n; ++i) pool.emplace_back(body);
    for (auto& th : pool) th.join();
}

inline int default_worker_count() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace frog
