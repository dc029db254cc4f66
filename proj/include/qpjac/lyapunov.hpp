#pragma once

// Finite-scale Lyapunov exponents of the entire transfer cocycle, the exact
// split L = L_entire - D, empirical large-deviation profiles for the
// determinant entries, and the uniform upper bound probe.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "qpjac/frequency.hpp"
#include "qpjac/trigpoly.hpp"

namespace qpjac {

struct LyapunovEstimate {
    double L_a = 0.0;       // (1/N) mean of log||M_N^entire|| over phases
    double L = 0.0;         // L_a - D, exact by construction
    double D = 0.0;         // mean of log|b| on the line Im z = y
    double y = 0.0;
    long long N = 0;
    long long samples = 0;
    double std_error = 0.0;
};

/// Phase average over the grid x_i = i/M + seeded offset of
/// (1/N) log||M_N^entire(x_i + i y)||.
LyapunovEstimate lyapunov_estimate(const ModelSpec& model, double y, const Frequency& freq,
                                   cplx E, long long N, long long M, std::uint64_t seed);

struct DeviationProfile {
    long long N = 0;
    double y = 0.0;
    double center = 0.0;                    // N * L_a used for centering
    std::vector<double> H;                  // {0.5, 1, 2, 4, 8}
    std::vector<double> thresholds;         // H * (log N)^3
    std::vector<double> exceedance;         // for the determinant entry
    std::array<std::vector<double>, 4> entry_exceedance;  // all four entries
    double max_abs_deviation = 0.0;         // determinant entry, raw scale
};

/// Empirical measure of {x : |log|entry(x+iy)| - N L_a| > H (log N)^3} on a
/// uniform offset grid, for the determinant entry and the other three.
DeviationProfile deviation_profile(const ModelSpec& model, double y, const Frequency& freq,
                                   cplx E, long long N, long long grid_size,
                                   std::uint64_t seed = 0x5eedULL);

struct SupProbe {
    double probe = 0.0;        // max over grid, y in {0, +-1/N} of log||M|| - N L_a
    double normalized = 0.0;   // probe / (log N)^3
};

SupProbe sup_probe(const ModelSpec& model, const Frequency& freq, cplx E, long long N,
                   long long grid_size, std::uint64_t seed = 0x5eedULL);

}  // namespace qpjac
