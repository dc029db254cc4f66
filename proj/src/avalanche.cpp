#include "qpjac/avalanche.hpp"

#include <algorithm>
#include <cmath>

#include "qpjac/transfer.hpp"
#include "qpjac/zeros.hpp"

namespace qpjac {

PartitionScheme PartitionScheme::uniform(IndexInterval whole, long long m) {
    if (m < 1 || whole.length() < m) throw Error("cannot cut interval into m pieces");
    PartitionScheme s;
    s.whole = whole;
    const long long n = whole.length();
    long long start = whole.lo;
    long long min_len = n, max_len = 0;
    for (long long j = 0; j < m; ++j) {
        long long len = n / m + (j < n % m ? 1 : 0);
        s.parts.push_back({start, start + len - 1});
        min_len = std::min(min_len, len);
        max_len = std::max(max_len, len);
        start += len;
    }
    s.unit_scale = min_len;
    s.exponent_cap = min_len > 1
                         ? std::max(1.5, std::log(static_cast<double>(max_len)) /
                                             std::log(static_cast<double>(min_len)))
                         : 2.0;
    return s;
}

void PartitionScheme::validate() const {
    if (parts.empty()) throw Error("partition has no parts");
    if (parts.front().lo != whole.lo || parts.back().hi != whole.hi)
        throw Error("partition does not cover the interval");
    for (size_t j = 0; j + 1 < parts.size(); ++j)
        if (parts[j + 1].lo != parts[j].hi + 1)
            throw Error("partition intervals must be consecutive and disjoint");
    const double cap = std::pow(static_cast<double>(unit_scale), exponent_cap);
    for (const IndexInterval& p : parts) {
        if (p.length() < unit_scale || static_cast<double>(p.length()) > cap)
            throw Error("part length outside [l, l^A]");
    }
}

double avalanche_residual(const ModelSpec& model, cplx z, const Frequency& freq, cplx E,
                          const PartitionScheme& scheme, ApVariant variant) {
    scheme.validate();
    const size_t m = scheme.parts.size();
    if (m < 2) throw Error("avalanche_residual requires m >= 2");

    std::vector<ScaledMatrix2> blocks;
    blocks.reserve(m);
    for (const IndexInterval& part : scheme.parts)
        blocks.push_back(monodromy(model, z, freq, E, part));

    double lhs;
    std::vector<ScaledMatrix2> A = blocks;
    if (variant == ApVariant::determinant) {
        // |f_whole| = ||P M_m ... M_1 P|| with P = diag(1,0): project the
        // chain ends and compare against the Dirichlet determinant.
        A.front() = A.front().project_cols();
        A.back() = A.back().project_rows();
        lhs = dirichlet_det(model, z, freq, E, scheme.whole).log_abs();
    } else {
        ScaledMatrix2 whole = ScaledMatrix2::identity();
        for (const ScaledMatrix2& B : blocks) whole = B * whole;
        lhs = log_two_norm(whole);
    }

    double sum_singles = 0.0;
    for (size_t j = 1; j + 1 < m; ++j) sum_singles += log_two_norm(A[j]);
    double sum_pairs = 0.0;
    for (size_t j = 0; j + 1 < m; ++j) sum_pairs += log_two_norm(A[j + 1] * A[j]);
    return std::abs(lhs + sum_singles - sum_pairs);
}

double log_norm_split_ratio(const ModelSpec& model, double x, const Frequency& freq,
                            cplx E, IndexInterval lam, long long k) {
    if (k <= lam.lo || k > lam.hi) throw Error("split index must cut two nonempty pieces");
    ScaledMatrix2 left = monodromy(model, cplx(x), freq, E, {lam.lo, k - 1});
    ScaledMatrix2 right = monodromy(model, cplx(x), freq, E, {k, lam.hi});
    return log_two_norm(left) + log_two_norm(right) - log_two_norm(right * left);
}

double split_ratio_residual(const ModelSpec& model, double x, const Frequency& freq,
                            double E, double eta, long long N, long long k,
                            IndexInterval lam_window) {
    const long long w = lam_window.length();
    if (k < 1 || k > N - 1) throw Error("split index must cut two nonempty pieces");
    if (lam_window.lo > 0 || lam_window.hi < 1)
        throw Error("window must cover the split point");
    // The localization estimate targets k at least 2|window| from the ends;
    // degenerate geometries are still computable, so they are not rejected.
    (void)w;
    const cplx Ec(E, eta);
    double global = log_norm_split_ratio(model, x, freq, Ec, {0, N - 1}, k);
    double local_x = x + static_cast<double>(k - 1) * freq.omega;
    double local = log_norm_split_ratio(model, local_x, freq, Ec, lam_window, 1);
    return global - local;
}

namespace {

double torus_distance(double a, double b) {
    double d = a - b;
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

double logsumexp(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace

WegnerReport wegner_pointwise(const ModelSpec& model, double x, const Frequency& freq,
                              double E, double eta, long long N, double rho0,
                              long long window) {
    if (eta <= 0.0) throw Error("wegner_pointwise requires eta > 0");
    if (!(rho0 > 0.0 && rho0 < 0.5)) throw Error("rho0 must be in (0, 1/2)");
    if (window <= 0)
        window = static_cast<long long>(std::ceil(std::pow(std::log(static_cast<double>(N)), 2.0)));
    window = std::min(window, N / 8);
    window = std::max<long long>(window, 4);

    WegnerReport rep;
    rep.query = {E, eta, x};
    rep.N = N;
    rep.rho0 = rho0;
    rep.window = window;
    rep.margin = 2 * window;

    // Torus zeros of the conjugate-reflected coupling.
    std::vector<double> bt_zero_phases;
    for (const cplx& wroot : torus_roots(model.b_tilde).roots) {
        if (std::abs(std::abs(wroot) - 1.0) < 1e-8) {
            double ph = std::arg(wroot) / (2.0 * std::numbers::pi);
            bt_zero_phases.push_back(ph - std::floor(ph));
        }
    }

    // Local determinant over a centered window, as a function of the phase;
    // k is excluded when this has a zero within rho0 of x + (k-1) omega.
    const IndexInterval local{-window / 2, window / 2};
    const cplx Ec(E, eta);
    AnalyticFn local_det = [&model, &freq, Ec, local](cplx z) {
        return dirichlet_det(model, z, freq, Ec, local);
    };

    const IndexInterval lam{0, N - 1};
    std::vector<ScaledMatrix2> prefix = monodromy_prefixes(model, cplx(x), freq, Ec, lam);
    std::vector<ScaledMatrix2> suffix = monodromy_suffixes(model, cplx(x), freq, Ec, lam);
    const double log_whole = log_two_norm(suffix[0]);

    for (long long k = 1; k <= N - 1; ++k) {
        bool excluded = false;
        if (k < rep.margin || k > N - 1 - rep.margin) excluded = true;
        double xk = x + static_cast<double>(k) * freq.omega;
        xk -= std::floor(xk);
        if (!excluded) {
            for (double ph : bt_zero_phases) {
                if (torus_distance(xk, ph) < rho0) {
                    excluded = true;
                    break;
                }
            }
        }
        if (!excluded) {
            double ck = x + static_cast<double>(k - 1) * freq.omega;
            ck -= std::floor(ck);
            try {
                if (winding_count(local_det, Disk{cplx(ck, 0.0), rho0}).count > 0)
                    excluded = true;
            } catch (const ContourThroughZero&) {
                excluded = true;
            }
        }
        if (excluded) {
            rep.excluded_K.push_back(k);
            continue;
        }
        double log_w = log_two_norm(prefix[static_cast<size_t>(k)]) +
                       log_two_norm(suffix[static_cast<size_t>(k)]) - log_whole;
        double log_bt = std::log(std::abs(model.b_tilde.eval(cplx(xk))));
        rep.kept_k.push_back(k);
        rep.log_terms.push_back(log_w - log_bt);
    }

    rep.K_size = static_cast<long long>(rep.excluded_K.size());
    rep.log_sum_terms = logsumexp(rep.log_terms);
    double lin_sum = rep.log_terms.empty() ? 0.0 : std::exp(rep.log_sum_terms);
    rep.rhs_bound = 4.0 * eta * lin_sum + 2.0 * static_cast<double>(rep.K_size) + 10.0;
    rep.lhs_count = spectral_interval_count(model, x, freq, lam, E, eta);

    const double slack = static_cast<double>(rep.lhs_count) -
                         (2.0 * static_cast<double>(rep.K_size) + 10.0);
    if (slack <= 0.0) {
        rep.pass = true;
    } else {
        rep.pass = std::log(slack) <= std::log(4.0 * eta) + rep.log_sum_terms;
    }
    return rep;
}

}  // namespace qpjac
