#pragma once

// Finite-volume Jacobi matrices with Dirichlet ends, Sturm-sequence
// eigenvalue counting, bisection eigenvalues, and the Green-function
// diagonal through determinant ratios.

#include <complex>
#include <vector>

#include "qpjac/frequency.hpp"
#include "qpjac/trigpoly.hpp"

namespace qpjac {

/// Integer interval [lo, hi], length hi - lo + 1 >= 1.
struct IndexInterval {
    long long lo = 0;
    long long hi = 0;
    long long length() const { return hi - lo + 1; }
};

/// Energy window query: spectrum of H(x) intersected with [E-eta, E+eta).
struct SpectralQuery {
    double E = 0.0;
    double eta = 0.0;
    double x = 0.0;
};

/// Complex tridiagonal H_Lam(z): diag a(z+j w), couplings -b / -b_tilde at
/// argument z+(j+1) w between sites j and j+1.
struct Tridiagonal {
    long long lo = 0;
    std::vector<cplx> diag;
    std::vector<cplx> super;  // entry (j, j+1)
    std::vector<cplx> sub;    // entry (j+1, j)
};

Tridiagonal build_tridiagonal(const ModelSpec& model, cplx z, const Frequency& freq,
                              IndexInterval lam);

/// Phase-reduced real symmetric form for one (x, interval): diagonal and
/// squared off-diagonal moduli, reusable across many energies.
class SturmSeed {
  public:
    SturmSeed(const ModelSpec& model, double x, const Frequency& freq, IndexInterval lam);

    /// #{eigenvalues < E} by the shifted pivot recurrence.
    long long count_below(double E) const;
    long long size() const { return static_cast<long long>(diag_.size()); }
    double gershgorin_lo() const { return glo_; }
    double gershgorin_hi() const { return ghi_; }
    double norm_scale() const { return scale_; }

  private:
    std::vector<double> diag_;
    std::vector<double> off2_;  // |b|^2 between consecutive sites
    double scale_;              // pivot guard reference ~ ||H||
    double glo_, ghi_;
};

long long count_below(const ModelSpec& model, double x, const Frequency& freq,
                      IndexInterval lam, double E);

/// count_below(E+eta) - count_below(E-eta): eigenvalues in [E-eta, E+eta).
long long spectral_interval_count(const ModelSpec& model, double x, const Frequency& freq,
                                  IndexInterval lam, double E, double eta);

/// All eigenvalues, ascending, by bisection on the Sturm count.
/// Oracle-scale only (|lam| <= 4096).
std::vector<double> eigenvalues_full(const ModelSpec& model, double x,
                                     const Frequency& freq, IndexInterval lam);

/// <delta_k, (H_Lam(x) - E - i eta)^{-1} delta_k> as a ratio of Dirichlet
/// determinants at complex energy E + i eta.
cplx green_diag(const ModelSpec& model, double x, const Frequency& freq,
                IndexInterval lam, double E, double eta, long long k);

}  // namespace qpjac
