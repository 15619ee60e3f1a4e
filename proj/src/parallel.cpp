#include "rml/parallel.hpp"

#include <algorithm>

namespace rml {

namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned k) { g_max_threads.store(k); }

unsigned max_threads() {
    unsigned k = g_max_threads.load();
    if (k == 0) k = std::max(1u, std::thread::hardware_concurrency());
    return k;
}

void parallel_chunks(std::size_t total, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (total == 0) return;
    if (chunk == 0) chunk = 1;
    const std::size_t n_chunks = (total + chunk - 1) / chunk;
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(max_threads(), n_chunks));

    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            fn(c, c * chunk, std::min(total, (c + 1) * chunk));
        return;
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            fn(c, c * chunk, std::min(total, (c + 1) * chunk));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

} // namespace rml
