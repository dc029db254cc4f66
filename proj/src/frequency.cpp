#include "qpjac/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qpjac {

namespace {

// Orbit arithmetic runs in 64-bit fixed point: multiplication wraps mod 2^64,
// which is exactly mod 1 for phases scaled by 2^64.  The dyadic rounding of
// omega costs at most N * 2^-64, far below every tolerance used here.
using u64 = unsigned long long;

u64 to_fixed(double omega) {
    long double t = static_cast<long double>(omega) * 18446744073709551616.0L;  // 2^64
    if (t >= 18446744073709551615.0L) return ~0ULL;
    if (t <= 0.0L) return 0ULL;
    return static_cast<u64>(t);
}

double fixed_to_unit(u64 phi) {
    return static_cast<double>(phi) * 5.421010862427522e-20;  // 2^-64
}

double fixed_torus_dist(u64 phi) {
    u64 d = std::min(phi, ~phi + 1);  // min(phi, 2^64 - phi)
    return fixed_to_unit(d);
}

double log_factor(long long n, double alpha) {
    return std::pow(std::max(1.0, std::log(static_cast<double>(n))), alpha);
}

}  // namespace

double torus_dist(double x) {
    double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

Frequency check_diophantine(double omega, double c, double alpha, long long N) {
    if (N < 1 || c <= 0.0 || alpha <= 1.0)
        throw Error("check_diophantine requires N >= 1, c > 0, alpha > 1");
    const u64 w = to_fixed(omega);
    u64 phi = 0;
    long long worst_n = 0;
    double worst_margin = 0.0, worst_dist = 0.0, worst_req = 0.0;
    for (long long n = 1; n <= N; ++n) {
        phi += w;  // wraps mod 2^64
        double dist = fixed_torus_dist(phi);
        double required = c / (static_cast<double>(n) * log_factor(n, alpha));
        if (dist < required && (worst_n == 0 || dist - required < worst_margin)) {
            worst_n = n;
            worst_margin = dist - required;
            worst_dist = dist;
            worst_req = required;
        }
    }
    if (worst_n != 0) throw DiophantineViolation(worst_n, worst_dist, worst_req);
    return Frequency{omega, c, alpha, N};
}

Frequency golden_frequency(long long certify_N) {
    const double omega = (std::sqrt(5.0) - 1.0) / 2.0;
    return check_diophantine(omega, 0.2, 2.0, certify_N);
}

long long orbit_interval_count(const Frequency& freq, long long N, double u, double v) {
    if (N < 1) throw Error("orbit_interval_count requires N >= 1");
    if (v - u >= 1.0) return N;  // full circle
    if (u == v) return 0;        // empty; u > v wraps around the torus
    auto wrap = [](double t) { return t - std::floor(t); };
    const double lo = wrap(u);
    const double hi = wrap(v);
    const u64 w = to_fixed(freq.omega);
    u64 phi = 0;
    long long count = 0;
    for (long long m = 0; m < N; ++m) {
        double x = fixed_to_unit(phi);
        bool in = lo <= hi ? (x >= lo && x < hi) : (x >= lo || x < hi);
        if (in) ++count;
        phi += w;
    }
    return count;
}

std::pair<double, double> orbit_gaps(const Frequency& freq, long long N) {
    if (N < 2) throw Error("orbit_gaps requires N >= 2");
    const u64 w = to_fixed(freq.omega);
    std::vector<u64> pts(static_cast<size_t>(N));
    u64 phi = 0;
    for (long long m = 0; m < N; ++m) {
        pts[static_cast<size_t>(m)] = phi;
        phi += w;
    }
    std::sort(pts.begin(), pts.end());
    u64 min_gap = ~0ULL, max_gap = 0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        u64 g = pts[i + 1] - pts[i];
        min_gap = std::min(min_gap, g);
        max_gap = std::max(max_gap, g);
    }
    u64 wrap_gap = pts.front() - pts.back();  // mod 2^64
    min_gap = std::min(min_gap, wrap_gap);
    max_gap = std::max(max_gap, wrap_gap);
    return {fixed_to_unit(min_gap), fixed_to_unit(max_gap)};
}

ShiftPowerSum shift_power_sum(const Frequency& freq, long long N, double p, double rho) {
    if (rho <= 0.0) throw Error("shift_power_sum requires rho > 0");
    const u64 w = to_fixed(freq.omega);
    ShiftPowerSum r;
    u64 phi = 0;
    for (long long k = 0; k < N; ++k) {
        double d = fixed_torus_dist(phi);
        if (d >= rho) r.sum += std::pow(d, -p);
        phi += w;
    }
    r.bound = static_cast<double>(N) * log_factor(N, freq.alpha) * std::pow(rho, 1.0 - p);
    return r;
}

}  // namespace qpjac
