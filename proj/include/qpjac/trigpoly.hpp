#pragma once

// Trigonometric polynomials p(z) = sum_{|k|<=d} c_k e^{2 pi i k z}, their
// conjugate reflection, and root data of the associated algebraic polynomial
// in w = e^{2 pi i z}.

#include <complex>
#include <vector>

#include "qpjac/errors.hpp"

namespace qpjac {

using cplx = std::complex<double>;

class TrigPoly {
  public:
    TrigPoly() : c_{cplx(0)}, d_(0), real_on_torus_(true) {}

    /// Coefficients ordered c_{-d}, ..., c_0, ..., c_d.  Trailing zero
    /// coefficients are trimmed so the stored degree is exact.
    static TrigPoly from_coefficients(std::vector<cplx> coeffs);

    static TrigPoly constant(cplx value) { return from_coefficients({value}); }
    /// amplitude * cos(2 pi x), i.e. c_{+-1} = amplitude / 2.
    static TrigPoly cosine(double amplitude);
    /// c_k = value for a single Fourier mode k.
    static TrigPoly mode(int k, cplx value);

    int degree() const { return d_; }
    /// c_k, 0 for |k| > degree.
    cplx coeff(int k) const;
    const std::vector<cplx>& coefficients() const { return c_; }
    bool real_on_torus() const { return real_on_torus_; }
    bool is_zero() const;

    cplx eval(cplx z) const;
    /// Value on the real axis; requires real_on_torus.
    double eval_real(double x) const;

    /// Conjugate reflection q(z) = conj(p(conj z)); coefficients conj(c_{-k}).
    TrigPoly conj_reflect() const;

    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator*(cplx s) const;

  private:
    std::vector<cplx> c_;  // c_[k + d_]
    int d_;
    bool real_on_torus_;
};

/// Roots of the algebraic polynomial P with p(z) = e^{-2 pi i d z} P(e^{2 pi i z}).
struct RootSet {
    std::vector<cplx> roots;    // all roots of P, with multiplicity (0 included)
    int on_torus_count = 0;     // roots with ||w| - 1| < torus_tol
    double leading_modulus = 0; // |leading coefficient of P| after trimming
};

/// All roots of the associated w-polynomial via Aberth simultaneous iteration,
/// refined until the scaled residual drops below 1e-12 * max|c_k|.
/// Throws IdenticallyZero / NoConvergence.
RootSet torus_roots(const TrigPoly& poly, double torus_tol = 1e-8);

/// Mean of log|p(x + i y)| over x in [0,1), by the closed Jensen/Mahler form
/// over the roots of the w-polynomial.
double mean_log_abs(const TrigPoly& poly, double y);

/// Jacobi coefficient pair (a on the diagonal, -b / -conj_reflect(b) off it)
/// with the derived zero-count data that fixes the Holder exponent.
struct ModelSpec {
    TrigPoly a;        // real on the torus
    TrigPoly b;        // not identically zero
    TrigPoly b_tilde;  // conj_reflect(b), cached
    int d0 = 0;        // max(deg a, deg b)
    int n_b = 0;       // zeros of b on the torus, with multiplicity
    double p = 0.0;    // 1 / (n_b + 2 d0)

    static ModelSpec make(TrigPoly a, TrigPoly b, double torus_tol = 1e-8);
    /// b = 1, a = 2 lambda cos(2 pi x).
    static ModelSpec almost_mathieu(double lambda);
    /// b(x) = l3 e^{-2 pi i (x + omega/2)} + l2 + l1 e^{2 pi i (x + omega/2)},
    /// a = 2 lambda cos(2 pi x).
    static ModelSpec extended_harper(double lambda, double l1, double l2, double l3,
                                     double omega);
};

}  // namespace qpjac
