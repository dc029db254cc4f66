#include "qpjac/jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "qpjac/transfer.hpp"

namespace qpjac {

namespace {
constexpr double kPivotTau = 1e-30;
}

Tridiagonal build_tridiagonal(const ModelSpec& model, cplx z, const Frequency& freq,
                              IndexInterval lam) {
    if (lam.length() < 1) throw Error("interval must have length >= 1");
    Tridiagonal t;
    t.lo = lam.lo;
    const long long n = lam.length();
    t.diag.reserve(static_cast<size_t>(n));
    t.super.reserve(static_cast<size_t>(n - 1));
    t.sub.reserve(static_cast<size_t>(n - 1));
    for (long long j = lam.lo; j <= lam.hi; ++j) {
        t.diag.push_back(model.a.eval(z + static_cast<double>(j) * freq.omega));
        if (j < lam.hi) {
            cplx arg = z + static_cast<double>(j + 1) * freq.omega;
            t.super.push_back(-model.b.eval(arg));
            t.sub.push_back(-model.b_tilde.eval(arg));
        }
    }
    return t;
}

SturmSeed::SturmSeed(const ModelSpec& model, double x, const Frequency& freq,
                     IndexInterval lam) {
    if (lam.length() < 1) throw Error("interval must have length >= 1");
    const long long n = lam.length();
    diag_.resize(static_cast<size_t>(n));
    off2_.resize(static_cast<size_t>(n - 1));
    std::vector<double> offabs(static_cast<size_t>(n - 1));
    for (long long j = 0; j < n; ++j) {
        diag_[static_cast<size_t>(j)] =
            model.a.eval_real(x + static_cast<double>(lam.lo + j) * freq.omega);
        if (j < n - 1) {
            // Unitary diagonal gauge reduces the Hermitian tridiagonal to a
            // real symmetric one with off-diagonals |b|.
            cplx b = model.b.eval(x + static_cast<double>(lam.lo + j + 1) * freq.omega);
            off2_[static_cast<size_t>(j)] = std::norm(b);
            offabs[static_cast<size_t>(j)] = std::abs(b);
        }
    }
    scale_ = 0.0;
    glo_ = diag_[0];
    ghi_ = diag_[0];
    for (long long j = 0; j < n; ++j) {
        double left = j > 0 ? offabs[static_cast<size_t>(j - 1)] : 0.0;
        double right = j < n - 1 ? offabs[static_cast<size_t>(j)] : 0.0;
        double d = diag_[static_cast<size_t>(j)];
        scale_ = std::max(scale_, std::abs(d) + left + right);
        glo_ = std::min(glo_, d - left - right);
        ghi_ = std::max(ghi_, d + left + right);
    }
    if (scale_ == 0.0) scale_ = 1.0;
}

long long SturmSeed::count_below(double E) const {
    const double pivmin = kPivotTau * scale_;
    long long count = 0;
    double d = diag_[0] - E;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0) ++count;
    for (size_t k = 1; k < diag_.size(); ++k) {
        d = (diag_[k] - E) - off2_[k - 1] / d;
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0) ++count;
    }
    return count;
}

long long count_below(const ModelSpec& model, double x, const Frequency& freq,
                      IndexInterval lam, double E) {
    return SturmSeed(model, x, freq, lam).count_below(E);
}

long long spectral_interval_count(const ModelSpec& model, double x, const Frequency& freq,
                                  IndexInterval lam, double E, double eta) {
    if (eta <= 0.0) throw Error("spectral_interval_count requires eta > 0");
    SturmSeed seed(model, x, freq, lam);
    return seed.count_below(E + eta) - seed.count_below(E - eta);
}

namespace {

void bisect_eigenvalues(const SturmSeed& seed, double lo, double hi, long long clo,
                        long long chi, double tol, std::vector<double>& out) {
    if (chi == clo) return;
    if (hi - lo < tol) {
        double mid = 0.5 * (lo + hi);
        for (long long i = clo; i < chi; ++i) out.push_back(mid);
        return;
    }
    double mid = 0.5 * (lo + hi);
    long long cmid = seed.count_below(mid);
    bisect_eigenvalues(seed, lo, mid, clo, cmid, tol, out);
    bisect_eigenvalues(seed, mid, hi, cmid, chi, tol, out);
}

}  // namespace

std::vector<double> eigenvalues_full(const ModelSpec& model, double x,
                                     const Frequency& freq, IndexInterval lam) {
    if (lam.length() > 4096) throw Error("eigenvalues_full is limited to |lam| <= 4096");
    SturmSeed seed(model, x, freq, lam);
    double pad = 1e-8 * (1.0 + seed.norm_scale());
    double lo = seed.gershgorin_lo() - pad;
    double hi = seed.gershgorin_hi() + pad;
    double tol = 1e-12 * std::max(1.0, seed.norm_scale());
    std::vector<double> out;
    out.reserve(static_cast<size_t>(lam.length()));
    bisect_eigenvalues(seed, lo, hi, seed.count_below(lo), seed.count_below(hi), tol, out);
    return out;
}

cplx green_diag(const ModelSpec& model, double x, const Frequency& freq, IndexInterval lam,
                double E, double eta, long long k) {
    if (eta <= 0.0) throw Error("green_diag requires eta > 0");
    if (k < lam.lo || k > lam.hi) throw Error("site index outside the interval");
    const cplx w(E, eta);
    ScaledComplex left = dirichlet_det(model, cplx(x), freq, w, lam.lo, k - 1);
    ScaledComplex right = dirichlet_det(model, cplx(x), freq, w, k + 1, lam.hi);
    ScaledComplex den = dirichlet_det(model, cplx(x), freq, w, lam.lo, lam.hi);
    return ((left * right) / den).to_complex();
}

}  // namespace qpjac
