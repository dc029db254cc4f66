#pragma once

// Transfer matrices for the difference equation, the entire (singularity
// free) variant obtained by clearing the 1/b factors, Dirichlet
// determinants via the three-term recurrence, and Birkhoff sums of log|b|.
// The algebraic identities tying these together are exposed as residuals.

#include <complex>
#include <vector>

#include "qpjac/frequency.hpp"
#include "qpjac/jacobi.hpp"
#include "qpjac/scaled.hpp"
#include "qpjac/trigpoly.hpp"

namespace qpjac {

/// Running pair (f_n, f_{n-1}) of the determinant recurrence with the
/// conventions f_0 = 1 (empty interval) and f_{-1} = 0.
struct DetPair {
    ScaledComplex curr = ScaledComplex(1.0);
    ScaledComplex prev = ScaledComplex(0.0);

    /// One step: f_{n+1} = (a - E) f_n - b * b_tilde f_{n-1},
    /// with a, b, b_tilde evaluated at the new site.
    void advance(cplx a_minus_E, cplx b_times_btilde) {
        ScaledComplex next = curr * ScaledComplex(a_minus_E) -
                             prev * ScaledComplex(b_times_btilde);
        prev = curr;
        curr = next;
    }
};

/// Product over j = hi..lo of [[a(z+jw)-E, -b_tilde(z+jw)], [b(z+(j+1)w), 0]].
/// Entire in z and E.
ScaledMatrix2 monodromy(const ModelSpec& model, cplx z, const Frequency& freq, cplx E,
                        IndexInterval lam);

struct MonodromyWithDet {
    ScaledMatrix2 matrix;
    ScaledComplex det;  // product of the per-factor determinants
};

/// Same product, carrying det multiplicatively (the entrywise determinant of
/// the final matrix cancels catastrophically at large N).
MonodromyWithDet monodromy_with_det(const ModelSpec& model, cplx z, const Frequency& freq,
                                    cplx E, IndexInterval lam);

/// Transfer matrix with the 1/b(z+(j+1)w) factors kept.
/// Throws MinusInfinity if the orbit hits an exact zero of b.
ScaledMatrix2 monodromy_unregularized(const ModelSpec& model, cplx z,
                                      const Frequency& freq, cplx E, IndexInterval lam);

/// det(H_Lam(z) - E) by the three-term recurrence.  Degenerate intervals
/// follow the determinant conventions: length 0 -> 1, length -1 -> 0.
ScaledComplex dirichlet_det(const ModelSpec& model, cplx z, const Frequency& freq, cplx E,
                            long long lo, long long hi);
ScaledComplex dirichlet_det(const ModelSpec& model, cplx z, const Frequency& freq, cplx E,
                            IndexInterval lam);

/// Partial transfer products over [lam.lo, lam.lo+k-1] for k = 0..N
/// (index 0 is the identity).
std::vector<ScaledMatrix2> monodromy_prefixes(const ModelSpec& model, cplx z,
                                              const Frequency& freq, cplx E,
                                              IndexInterval lam);
/// Partial products over [lam.lo+k, lam.hi] for k = 0..N (index N identity).
std::vector<ScaledMatrix2> monodromy_suffixes(const ModelSpec& model, cplx z,
                                              const Frequency& freq, cplx E,
                                              IndexInterval lam);

/// sum_{k=0}^{N-1} log|b(z + k w)| (or with the conjugate reflection).
/// Throws MinusInfinity(k) at an exact orbit zero.
double birkhoff_sum(const ModelSpec& model, cplx z, const Frequency& freq, long long N,
                    bool use_conj_reflection);

struct IdentityResiduals {
    double mu_ma;          // |log||M_N|| - (-S_N(z+w) + log||M_N^entire||)|
    double ma_fa;          // max over the four entries vs determinant products
    double det_birkhoff;   // |log|det M_N^entire| - (S~_N(z) + S_N(z+w))|
};

/// Floating-point scale residuals of the exact algebraic identities between
/// the transfer product, the determinant recurrence, and the Birkhoff sums.
IdentityResiduals identity_residuals(const ModelSpec& model, cplx z,
                                     const Frequency& freq, cplx E, IndexInterval lam);

}  // namespace qpjac
