#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cactl {

/// Worker-count hint: the CACTL_THREADS environment variable, clamped to
/// [1, 64]. Defaults to 1; results never depend on it.
inline unsigned thread_hint() {
    const char* env = std::getenv("CACTL_THREADS");
    if (!env) return 1;
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || parsed < 1) return 1;
    return static_cast<unsigned>(std::min<long>(parsed, 64));
}

/// Runs fn(begin, end, worker) on disjoint subranges of [0, total). With a
/// hint of 1 (the default) everything runs inline on the calling thread.
inline void parallel_ranges(std::uint64_t total, unsigned workers,
                            const std::function<void(std::uint64_t, std::uint64_t, unsigned)>& fn) {
    if (workers <= 1 || total < 2 * workers) {
        fn(0, total, 0);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = static_cast<std::uint64_t>(w) * chunk;
        const std::uint64_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
    }
    for (auto& t : threads) t.join();
}

} // namespace cactl
