#include "qpjac/parallel.hpp"

#include <cmath>

namespace qpjac {

namespace {
std::atomic<int> g_threads{0};  // 0 = use hardware concurrency
}

int max_threads() {
    int t = g_threads.load();
    if (t > 0) return t;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void set_max_threads(int n) { g_threads.store(n); }

double pairwise_sum(std::span<const double> v) {
    if (v.size() == 0) return 0.0;
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

MeanStd mean_std(std::span<const double> v) {
    MeanStd r;
    if (v.empty()) return r;
    const double n = static_cast<double>(v.size());
    r.value = pairwise_sum(v) / n;
    if (v.size() < 2) return r;
    std::vector<double> sq(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        double d = v[i] - r.value;
        sq[i] = d * d;
    }
    double var = pairwise_sum(sq) / (n - 1.0);
    r.std_error = std::sqrt(var / n);
    return r;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace qpjac
