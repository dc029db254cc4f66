#pragma once

// Avalanche-Principle expansion residuals for long products of hyperbolic
// transfer matrices, norm split ratios, their localization to a window, and
// the pointwise spectral-window count bound.

#include <complex>
#include <vector>

#include "qpjac/frequency.hpp"
#include "qpjac/jacobi.hpp"
#include "qpjac/trigpoly.hpp"

namespace qpjac {

/// Consecutive disjoint intervals covering `whole`, with unit scale l and
/// l <= |part| <= l^exponent_cap.
struct PartitionScheme {
    IndexInterval whole;
    std::vector<IndexInterval> parts;
    long long unit_scale = 0;
    double exponent_cap = 2.0;

    /// whole cut into m near-equal consecutive pieces.
    static PartitionScheme uniform(IndexInterval whole, long long m);
    void validate() const;  // throws Error on a malformed scheme
};

enum class ApVariant { determinant, monodromy };

/// |lhs + sum_{j=2}^{m-1} log||A_j|| - sum_{j=1}^{m-1} log||A_{j+1} A_j|||.
/// monodromy: lhs = log||M_whole||, A_j = M_j.  determinant: lhs = log|f_whole|
/// and the edge factors are projected, A_1 = M_1 diag(1,0), A_m = diag(1,0) M_m.
double avalanche_residual(const ModelSpec& model, cplx z, const Frequency& freq, cplx E,
                          const PartitionScheme& scheme, ApVariant variant);

/// log||M_[lo,k-1]|| + log||M_[k,hi]|| - log||M_[lo,hi]||; >= 0 up to rounding.
double log_norm_split_ratio(const ModelSpec& model, double x, const Frequency& freq,
                            cplx E, IndexInterval lam, long long k);

/// Split ratio at full scale N (split at k, complex energy E + i eta) minus
/// the same quantity for the window translated to x + (k-1) omega.
double split_ratio_residual(const ModelSpec& model, double x, const Frequency& freq,
                            double E, double eta, long long N, long long k,
                            IndexInterval lam_window);

struct WegnerReport {
    SpectralQuery query;            // E, eta, x
    long long N = 0;
    long long lhs_count = 0;        // |spec(H_N(x)) cap [E-eta, E+eta)|
    double rhs_bound = 0.0;         // 4 eta sum + 2|K| + 10 (may overflow to inf)
    double log_sum_terms = 0.0;     // log sum_{k not in K} W_{N,k} / |b~(x+k w)|
    std::vector<long long> excluded_K;
    long long K_size = 0;
    std::vector<long long> kept_k;
    std::vector<double> log_terms;  // aligned with kept_k
    bool pass = false;              // lhs <= rhs, evaluated in log scale
    double rho0 = 0.0;
    long long margin = 0;           // 2 * window size actually used
    long long window = 0;
};

/// Pointwise bound on the spectral window count: excluded set K holds the
/// margin indices plus the k whose phase is rho0-close to a torus zero of
/// b_tilde or to a zero of the local window determinant; the remaining k
/// contribute 4 eta W_{N,k} / |b_tilde(x + k omega)|.  Nothing is asserted;
/// both sides are returned.
WegnerReport wegner_pointwise(const ModelSpec& model, double x, const Frequency& freq,
                              double E, double eta, long long N, double rho0,
                              long long window = 0 /* 0 = ceil((log N)^2) */);

}  // namespace qpjac
