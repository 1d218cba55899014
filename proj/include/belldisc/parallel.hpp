// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace belldisc {

inline int resolve_workers(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Splits [0, total) into one contiguous chunk per worker and runs
// fn(worker_index, begin, end) on each. Results must be keyed by index (or by
// worker slot) so aggregation stays order-independent.
template <typename Fn>
void parallel_chunks(std::int64_t total, int workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || total < 2) {
        fn(0, std::int64_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (total + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = w * chunk;
        if (begin >= total) break;
        const std::int64_t end = std::min(total, begin + chunk);
        pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace belldisc
