#include "qpjac/transfer.hpp"

#include <cmath>

namespace qpjac {

namespace {

// Single transfer step at global site j:
// [[a(z+jw) - E, -b_tilde(z+jw)], [b(z+(j+1)w), 0]].
ScaledMatrix2 step_factor(const ModelSpec& model, cplx z, double omega, cplx E,
                          long long j) {
    cplx zj = z + static_cast<double>(j) * omega;
    cplx zj1 = z + static_cast<double>(j + 1) * omega;
    return ScaledMatrix2::from_entries(model.a.eval(zj) - E, -model.b_tilde.eval(zj),
                                       model.b.eval(zj1), cplx(0));
}

}  // namespace

ScaledMatrix2 monodromy(const ModelSpec& model, cplx z, const Frequency& freq, cplx E,
                        IndexInterval lam) {
    ScaledMatrix2 M = ScaledMatrix2::identity();
    for (long long j = lam.lo; j <= lam.hi; ++j)
        M = step_factor(model, z, freq.omega, E, j) * M;
    return M;
}

MonodromyWithDet monodromy_with_det(const ModelSpec& model, cplx z, const Frequency& freq,
                                    cplx E, IndexInterval lam) {
    MonodromyWithDet r;
    r.matrix = ScaledMatrix2::identity();
    r.det = ScaledComplex(1.0);
    for (long long j = lam.lo; j <= lam.hi; ++j) {
        ScaledMatrix2 F = step_factor(model, z, freq.omega, E, j);
        r.matrix = F * r.matrix;
        r.det *= F.det();
    }
    return r;
}

ScaledMatrix2 monodromy_unregularized(const ModelSpec& model, cplx z,
                                      const Frequency& freq, cplx E, IndexInterval lam) {
    ScaledMatrix2 M = ScaledMatrix2::identity();
    for (long long j = lam.lo; j <= lam.hi; ++j) {
        cplx zj = z + static_cast<double>(j) * freq.omega;
        cplx zj1 = z + static_cast<double>(j + 1) * freq.omega;
        cplx b1 = model.b.eval(zj1);
        if (b1 == cplx(0)) throw MinusInfinity(j + 1 - lam.lo);
        ScaledMatrix2 F = ScaledMatrix2::from_entries(
            (model.a.eval(zj) - E) / b1, -model.b_tilde.eval(zj) / b1, cplx(1), cplx(0));
        M = F * M;
    }
    return M;
}

ScaledComplex dirichlet_det(const ModelSpec& model, cplx z, const Frequency& freq, cplx E,
                            long long lo, long long hi) {
    if (hi < lo - 2) throw Error("determinant interval shorter than length -1");
    if (hi == lo - 2) return ScaledComplex(0.0);  // length -1 convention
    DetPair f;
    for (long long j = lo; j <= hi; ++j) {
        cplx zj = z + static_cast<double>(j) * freq.omega;
        f.advance(model.a.eval(zj) - E, model.b.eval(zj) * model.b_tilde.eval(zj));
    }
    return f.curr;
}

ScaledComplex dirichlet_det(const ModelSpec& model, cplx z, const Frequency& freq, cplx E,
                            IndexInterval lam) {
    return dirichlet_det(model, z, freq, E, lam.lo, lam.hi);
}

std::vector<ScaledMatrix2> monodromy_prefixes(const ModelSpec& model, cplx z,
                                              const Frequency& freq, cplx E,
                                              IndexInterval lam) {
    const long long n = lam.length();
    std::vector<ScaledMatrix2> out;
    out.reserve(static_cast<size_t>(n + 1));
    ScaledMatrix2 M = ScaledMatrix2::identity();
    out.push_back(M);
    for (long long j = lam.lo; j <= lam.hi; ++j) {
        M = step_factor(model, z, freq.omega, E, j) * M;
        out.push_back(M);
    }
    return out;
}

std::vector<ScaledMatrix2> monodromy_suffixes(const ModelSpec& model, cplx z,
                                              const Frequency& freq, cplx E,
                                              IndexInterval lam) {
    const long long n = lam.length();
    std::vector<ScaledMatrix2> out(static_cast<size_t>(n + 1));
    ScaledMatrix2 M = ScaledMatrix2::identity();
    out[static_cast<size_t>(n)] = M;
    for (long long j = lam.hi; j >= lam.lo; --j) {
        M = M * step_factor(model, z, freq.omega, E, j);
        out[static_cast<size_t>(j - lam.lo)] = M;
    }
    return out;
}

namespace {

// Birkhoff sum along orbit sites j0..j0+N-1, evaluating phases as
// z + j * omega so that routes sharing sites agree bitwise.
double birkhoff_over(const ModelSpec& model, cplx z, const Frequency& freq, long long j0,
                     long long N, bool use_conj_reflection) {
    const TrigPoly& g = use_conj_reflection ? model.b_tilde : model.b;
    double s = 0.0;
    for (long long k = 0; k < N; ++k) {
        cplx v = g.eval(z + static_cast<double>(j0 + k) * freq.omega);
        if (v == cplx(0)) throw MinusInfinity(k);
        s += std::log(std::abs(v));
    }
    return s;
}

}  // namespace

double birkhoff_sum(const ModelSpec& model, cplx z, const Frequency& freq, long long N,
                    bool use_conj_reflection) {
    return birkhoff_over(model, z, freq, 0, N, use_conj_reflection);
}

namespace {

// |log|x| - log|y|| for two scaled values; both exactly zero counts as a
// match, one zero as an infinite mismatch.
double log_mag_mismatch(const ScaledComplex& x, const ScaledComplex& y) {
    if (x.is_zero() && y.is_zero()) return 0.0;
    if (x.is_zero() || y.is_zero()) return std::numeric_limits<double>::infinity();
    return std::abs(x.log_abs() - y.log_abs());
}

}  // namespace

IdentityResiduals identity_residuals(const ModelSpec& model, cplx z, const Frequency& freq,
                                     cplx E, IndexInterval lam) {
    const long long N = lam.length();
    IdentityResiduals r{};

    MonodromyWithDet md = monodromy_with_det(model, z, freq, E, lam);
    const ScaledMatrix2& Ma = md.matrix;
    double log_Ma = log_two_norm(Ma);

    // Entries against determinant products (the characteristic-polynomial
    // relation for the entire transfer matrix).
    cplx bt_lo = model.b_tilde.eval(z + static_cast<double>(lam.lo) * freq.omega);
    cplx b_hi1 = model.b.eval(z + static_cast<double>(lam.hi + 1) * freq.omega);
    ScaledComplex e11 = dirichlet_det(model, z, freq, E, lam.lo, lam.hi);
    ScaledComplex e12 = ScaledComplex(-bt_lo) * dirichlet_det(model, z, freq, E, lam.lo + 1, lam.hi);
    ScaledComplex e21 = ScaledComplex(b_hi1) * dirichlet_det(model, z, freq, E, lam.lo, lam.hi - 1);
    ScaledComplex e22 = ScaledComplex(-bt_lo) * ScaledComplex(b_hi1) *
                        dirichlet_det(model, z, freq, E, lam.lo + 1, lam.hi - 1);
    r.ma_fa = 0.0;
    r.ma_fa = std::max(r.ma_fa, log_mag_mismatch(Ma.scaled_entry(0, 0), e11));
    r.ma_fa = std::max(r.ma_fa, log_mag_mismatch(Ma.scaled_entry(0, 1), e12));
    r.ma_fa = std::max(r.ma_fa, log_mag_mismatch(Ma.scaled_entry(1, 0), e21));
    r.ma_fa = std::max(r.ma_fa, log_mag_mismatch(Ma.scaled_entry(1, 1), e22));

    // det of the product against the two Birkhoff sums.
    double s_tilde = birkhoff_over(model, z, freq, lam.lo, N, true);
    double s_shift = birkhoff_over(model, z, freq, lam.lo + 1, N, false);
    r.det_birkhoff = std::abs(md.det.log_abs() - (s_tilde + s_shift));

    // Norm of the transfer matrix with the 1/b factors kept.
    ScaledMatrix2 Mu = monodromy_unregularized(model, z, freq, E, lam);
    r.mu_ma = std::abs(log_two_norm(Mu) - (-s_shift + log_Ma));
    return r;
}

}  // namespace qpjac
