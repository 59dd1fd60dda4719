#include "pflab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace pflab {

namespace {
int g_threads = 0;

int default_threads() {
    if (const char* env = std::getenv("PFLAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}
} // namespace

int thread_count() {
    if (g_threads == 0) g_threads = default_threads();
    return g_threads;
}

void set_thread_count(int n) { g_threads = n < 1 ? 1 : n; }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    const int nt = thread_count();
    if (nt == 1 || n < 4096) {
        fn(0, n);
        return;
    }
    // Chunk boundaries depend only on n, never on the thread count.
    const std::size_t chunk = std::max<std::size_t>(2048, n / (8 * static_cast<std::size_t>(nt)));
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            std::size_t lo = c * chunk;
            std::size_t hi = std::min(n, lo + chunk);
            fn(lo, hi);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

namespace {
constexpr std::size_t kBlock = 1024;

double pairwise(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise(v, half) + pairwise(v + half, n - half);
}
} // namespace

double pairwise_sum(std::span<const double> v) { return pairwise(v.data(), v.size()); }

double block_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= kBlock) return pairwise(v.data(), n);
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partials(nblocks);
    parallel_for(nblocks, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t b = lo; b < hi; ++b) {
            std::size_t s = b * kBlock;
            partials[b] = pairwise(v.data() + s, std::min(kBlock, n - s));
        }
    });
    return pairwise(partials.data(), partials.size());
}

double block_sum_fn(std::size_t n, const std::function<double(std::size_t)>& term) {
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partials(nblocks);
    parallel_for(nblocks, [&](std::size_t lo, std::size_t hi) {
        double buf[kBlock];
        for (std::size_t b = lo; b < hi; ++b) {
            std::size_t s = b * kBlock;
            std::size_t m = std::min(kBlock, n - s);
            for (std::size_t i = 0; i < m; ++i) buf[i] = term(s + i);
            partials[b] = pairwise(buf, m);
        }
    });
    return pairwise(partials.data(), partials.size());
}

} // namespace pflab
