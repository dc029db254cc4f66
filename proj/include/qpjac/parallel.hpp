#pragma once

// Deterministic helpers for the embarrassingly parallel phase/energy loops:
// results are written by index and reduced in a fixed pairwise order, so the
// output is independent of the thread count.

#include <atomic>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

namespace qpjac {

int max_threads();
void set_max_threads(int n);

template <class F>
void parallel_for(long long n, F&& body) {
    int t = max_threads();
    if (t <= 1 || n < 4) {
        for (long long i = 0; i < n; ++i) body(i);
        return;
    }
    t = static_cast<int>(std::min<long long>(t, n));
    std::atomic<long long> next(0);
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                long long i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

/// Fixed-topology pairwise sum; independent of how the values were produced.
double pairwise_sum(std::span<const double> v);

struct MeanStd {
    double value = 0.0;
    double std_error = 0.0;
};

/// Mean and standard error (sd / sqrt(n)) with pairwise reductions.
MeanStd mean_std(std::span<const double> v);

/// splitmix64 step, used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

}  // namespace qpjac
