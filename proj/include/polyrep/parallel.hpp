#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace polyrep {

// POLYREP_THREADS overrides hardware_concurrency
inline int default_threads() {
    if (const char* e = std::getenv("POLYREP_THREADS")) {
        int t = std::atoi(e);
        if (t > 0) return t;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Splits [0, n) into contiguous chunks, one per worker; fn(begin, end, chunk)
// results must be combined by chunk index so output does not depend on timing.
inline int parallel_chunks(long n, int threads, const std::function<void(long, long, int)>& fn) {
    if (threads <= 0) threads = default_threads();
    int k = static_cast<int>(std::max(1L, std::min<long>(threads, n)));
    if (k == 1) {
        fn(0, n, 0);
        return 1;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(k);
    for (int c = 0; c < k; ++c) {
        long b = n * c / k, e = n * (c + 1) / k;
        pool.emplace_back([&, b, e, c] {
            try {
                fn(b, e, c);
            } catch (...) {
                errs[c] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return k;
}

}  // namespace polyrep
