#pragma once

// Zero counting in disks by phase tracking along the contour, discrete
// Jensen averages (normalized double disk means), the zero-free shift
// search, and the multiscale Jensen telescoping residual.

#include <complex>
#include <functional>
#include <vector>

#include "qpjac/frequency.hpp"
#include "qpjac/jacobi.hpp"
#include "qpjac/scaled.hpp"
#include "qpjac/trigpoly.hpp"

namespace qpjac {

struct Disk {
    cplx center;
    double radius = 0.0;
};

struct WindingResult {
    long long count = 0;
    double log_min_modulus = 0.0;  // min log|f| over contour nodes
    double log_max_modulus = 0.0;
    long long nodes_used = 0;
    double radius_used = 0.0;      // after any nudges
};

/// Values are scaled so only arg and log|.| are consumed; the huge dynamic
/// range of long determinants never hits double limits.
using AnalyticFn = std::function<ScaledComplex(cplx)>;
using RealFn = std::function<double(cplx)>;

/// Zeros (with multiplicity) strictly inside the disk, by tracking arg f
/// along the circle with adaptive subdivision until every step is < pi/2.
/// Nudges the radius by +-1% (8 attempts) if the contour grazes a zero.
/// Throws ContourThroughZero / NoConvergence.
WindingResult winding_count(const AnalyticFn& f, Disk disk, long long max_nodes = 1 << 20);

struct JensenResult {
    double value = 0.0;
    double epsilon = 0.0;
    double grid_spacing = 0.0;
    long long samples_outer = 0;
};

/// (4/eps^2) * mean over z in D(z0,r) of [disk-mean of u over D(z,eps r) - u(z)],
/// evaluated once on a shared square grid of spacing eps*r/divisor, offset by
/// (h/sqrt2, h/sqrt3) so nodes avoid algebraic zero sets.
/// For u = log|f| this squeezes the zero count: nu((1-eps)r) <= J <= nu((1+eps)r).
/// Throws SingularSample if a sampled value is non-finite.
JensenResult jensen_average(const RealFn& u, cplx z0, double r, double epsilon,
                            int spacing_divisor = 16);

/// winding_count applied to z -> det(H_Lam(z) - E) on D(x0, r).
WindingResult zero_count_disk(const ModelSpec& model, const Frequency& freq, cplx E,
                              IndexInterval lam, double x0, double r);

/// The four entries of the length-k transfer product starting at shift s, as
/// functions of the phase z (through determinant products).
std::array<AnalyticFn, 4> window_entry_functions(const ModelSpec& model,
                                                 const Frequency& freq, cplx E,
                                                 long long s, long long k);

/// Smallest |s - s0| such that for every k in k_set and |m| <= m_max all four
/// entries of the length-k product at shift s+m are zero-free on D(x0, r0)
/// (identically zero entries are admissible).  Throws NoAdjustedInteger.
long long find_adjusted(const ModelSpec& model, const Frequency& freq, cplx E, double x0,
                        double r0, long long l, long long s0, long long search_radius,
                        const std::vector<long long>& k_set, long long m_max);

/// J_eps(log|f_Lam|) - sum_j J_eps(log|f_Lam_j|) over a partition of Lam.
double multiscale_jensen_residual(const ModelSpec& model, const Frequency& freq, cplx E,
                                  const std::vector<IndexInterval>& partition, double x0,
                                  double r, double epsilon, int spacing_divisor = 16);

}  // namespace qpjac
