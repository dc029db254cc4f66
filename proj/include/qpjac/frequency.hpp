#pragma once

// Irrational rotation numbers with a checked Diophantine certificate and
// equidistribution statistics of the orbit {n omega mod 1}.

#include <cstdint>
#include <utility>

#include "qpjac/errors.hpp"

namespace qpjac {

/// Rotation number omega in (0,1) with certificate parameters (c, alpha):
/// ||n omega|| >= c / (n * max(1, log n)^alpha) for 1 <= n <= verified_up_to.
struct Frequency {
    double omega = 0.0;
    double c = 0.0;
    double alpha = 1.0;
    long long verified_up_to = 0;
};

/// Distance from x to the nearest integer.
double torus_dist(double x);

/// Scans n = 1..N and returns a certified Frequency, or throws
/// DiophantineViolation at the worst failing n.
Frequency check_diophantine(double omega, double c, double alpha, long long N);

/// (sqrt(5)-1)/2 certified with (c, alpha) = (0.2, 2).
Frequency golden_frequency(long long certify_N = 1'000'000);

/// #{m in [0, N-1] : m omega mod 1 in [u, v)}.  The interval is taken on the
/// torus; u > v wraps around.
long long orbit_interval_count(const Frequency& freq, long long N, double u, double v);

/// (min, max) circular gap between consecutive orbit points, N >= 2.
std::pair<double, double> orbit_gaps(const Frequency& freq, long long N);

struct ShiftPowerSum {
    double sum = 0.0;    // sum of ||k omega||^{-p} over k in [0,N-1], ||k omega|| >= rho
    double bound = 0.0;  // N * max(1, log N)^alpha * rho^{1-p}
};

ShiftPowerSum shift_power_sum(const Frequency& freq, long long N, double p, double rho);

}  // namespace qpjac
