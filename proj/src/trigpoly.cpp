#include "qpjac/trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qpjac {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool conj_symmetric(const std::vector<cplx>& c, int d) {
    for (int k = 0; k <= d; ++k) {
        if (c[static_cast<size_t>(d - k)] != std::conj(c[static_cast<size_t>(d + k)]))
            return false;
    }
    return true;
}
}  // namespace

TrigPoly TrigPoly::from_coefficients(std::vector<cplx> coeffs) {
    if (coeffs.empty() || coeffs.size() % 2 == 0)
        throw Error("coefficient list must have odd length 2d+1");
    int d = static_cast<int>(coeffs.size() / 2);
    // Trim so that c_d != 0 or c_{-d} != 0 (exact degree).
    while (d > 0 && coeffs.front() == cplx(0) && coeffs.back() == cplx(0)) {
        coeffs.erase(coeffs.begin());
        coeffs.pop_back();
        --d;
    }
    TrigPoly p;
    p.c_ = std::move(coeffs);
    p.d_ = d;
    p.real_on_torus_ = conj_symmetric(p.c_, d);
    return p;
}

TrigPoly TrigPoly::cosine(double amplitude) {
    return from_coefficients({cplx(amplitude / 2.0), cplx(0), cplx(amplitude / 2.0)});
}

TrigPoly TrigPoly::mode(int k, cplx value) {
    int d = std::abs(k);
    std::vector<cplx> c(static_cast<size_t>(2 * d + 1), cplx(0));
    c[static_cast<size_t>(k + d)] = value;
    return from_coefficients(std::move(c));
}

cplx TrigPoly::coeff(int k) const {
    if (std::abs(k) > d_) return cplx(0);
    return c_[static_cast<size_t>(k + d_)];
}

bool TrigPoly::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const cplx& v) { return v == cplx(0); });
}

cplx TrigPoly::eval(cplx z) const {
    // w = e^{2 pi i z}; Horner in w for k >= 0 and in 1/w for k < 0.
    const cplx w = std::exp(cplx(0, kTwoPi) * z);
    cplx pos = c_[static_cast<size_t>(2 * d_)];
    for (int k = d_ - 1; k >= 0; --k) pos = pos * w + c_[static_cast<size_t>(k + d_)];
    if (d_ == 0) return pos;
    const cplx winv = 1.0 / w;
    cplx neg = c_[0];
    for (int k = -d_ + 1; k <= -1; ++k) neg = neg * winv + c_[static_cast<size_t>(k + d_)];
    return pos + neg * winv;
}

double TrigPoly::eval_real(double x) const {
    if (!real_on_torus_) throw Error("eval_real requires a torus-real polynomial");
    // c_0 + 2 sum_{k>=1} Re(c_k e^{2 pi i k x})
    double v = c_[static_cast<size_t>(d_)].real();
    const cplx w = std::polar(1.0, kTwoPi * x);
    cplx wk = w;
    for (int k = 1; k <= d_; ++k) {
        v += 2.0 * (c_[static_cast<size_t>(k + d_)] * wk).real();
        wk *= w;
    }
    return v;
}

TrigPoly TrigPoly::conj_reflect() const {
    std::vector<cplx> c(c_.size());
    for (int k = -d_; k <= d_; ++k)
        c[static_cast<size_t>(k + d_)] = std::conj(c_[static_cast<size_t>(-k + d_)]);
    return from_coefficients(std::move(c));
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    int d = std::max(d_, o.d_);
    std::vector<cplx> c(static_cast<size_t>(2 * d + 1), cplx(0));
    for (int k = -d; k <= d; ++k)
        c[static_cast<size_t>(k + d)] = coeff(k) + o.coeff(k);
    return from_coefficients(std::move(c));
}

TrigPoly TrigPoly::operator*(cplx s) const {
    std::vector<cplx> c = c_;
    for (cplx& v : c) v *= s;
    return from_coefficients(std::move(c));
}

namespace {

// Aberth-Ehrlich simultaneous iteration for all roots of a dense complex
// polynomial (lowest degree first).  Degrees here are tiny (<= 2d), so
// robustness beats speed: capped iterations plus seeded perturbation restarts.
std::vector<cplx> aberth_roots(const std::vector<cplx>& poly) {
    const int deg = static_cast<int>(poly.size()) - 1;
    if (deg <= 0) return {};
    if (deg == 1) return {-poly[0] / poly[1]};

    auto eval = [&](cplx z, cplx* deriv) {
        cplx p = poly[static_cast<size_t>(deg)];
        cplx dp = cplx(0);
        for (int i = deg - 1; i >= 0; --i) {
            dp = dp * z + p;
            p = p * z + poly[static_cast<size_t>(i)];
        }
        if (deriv) *deriv = dp;
        return p;
    };

    double maxc = 0.0;
    for (const cplx& v : poly) maxc = std::max(maxc, std::abs(v));
    double lead = std::abs(poly[static_cast<size_t>(deg)]);
    double radius = 1.0 + maxc / lead;  // Cauchy bound

    std::mt19937_64 rng(0x9d2c5680ULL);
    std::uniform_real_distribution<double> unif(-0.5, 0.5);

    std::vector<cplx> z(static_cast<size_t>(deg));
    for (int restart = 0; restart < 6; ++restart) {
        for (int i = 0; i < deg; ++i) {
            double ang = kTwoPi * (i + 0.25) / deg + 0.37 * restart;
            double r = radius * (0.5 + 0.1 * restart + (restart ? 0.05 * unif(rng) : 0.0));
            z[static_cast<size_t>(i)] = std::polar(r, ang);
        }
        bool stalled = false;
        for (int it = 0; it < 200 && !stalled; ++it) {
            double move = 0.0;
            for (int i = 0; i < deg; ++i) {
                cplx dp;
                cplx p = eval(z[static_cast<size_t>(i)], &dp);
                if (p == cplx(0)) continue;
                cplx w = dp == cplx(0) ? cplx(0) : p / dp;
                cplx sum = cplx(0);
                for (int j = 0; j < deg; ++j) {
                    if (j == i) continue;
                    cplx diff = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
                    if (diff == cplx(0)) diff = cplx(1e-30, 1e-30);
                    sum += 1.0 / diff;
                }
                cplx denom = 1.0 - w * sum;
                cplx corr = denom == cplx(0) ? w : w / denom;
                z[static_cast<size_t>(i)] -= corr;
                move = std::max(move, std::abs(corr) /
                                          std::max(1.0, std::abs(z[static_cast<size_t>(i)])));
            }
            if (move < 1e-15) stalled = true;
        }
        bool ok = true;
        for (int i = 0; i < deg; ++i) {
            double scale = std::pow(std::max(1.0, std::abs(z[static_cast<size_t>(i)])), deg);
            if (std::abs(eval(z[static_cast<size_t>(i)], nullptr)) > 1e-12 * maxc * scale) {
                ok = false;
                break;
            }
        }
        if (ok) return z;
    }
    throw NoConvergence("root finder did not reach the residual target");
}

}  // namespace

RootSet torus_roots(const TrigPoly& poly, double torus_tol) {
    if (poly.is_zero()) throw IdenticallyZero();
    const int d = poly.degree();
    // P(w) = sum_{j=0}^{2d} c_{j-d} w^j
    std::vector<cplx> P(static_cast<size_t>(2 * d + 1));
    for (int j = 0; j <= 2 * d; ++j) P[static_cast<size_t>(j)] = poly.coeff(j - d);
    while (P.size() > 1 && P.back() == cplx(0)) P.pop_back();

    RootSet rs;
    rs.leading_modulus = std::abs(P.back());
    // Factor out exact roots at w = 0 (they correspond to no zero of p, but
    // enter the Mahler form through log max(r, 0) = log r).
    size_t zeros_at_origin = 0;
    while (zeros_at_origin + 1 < P.size() && P[zeros_at_origin] == cplx(0))
        ++zeros_at_origin;
    std::vector<cplx> Q(P.begin() + static_cast<long>(zeros_at_origin), P.end());

    rs.roots.assign(zeros_at_origin, cplx(0));
    std::vector<cplx> found = aberth_roots(Q);
    rs.roots.insert(rs.roots.end(), found.begin(), found.end());
    for (const cplx& w : rs.roots)
        if (std::abs(std::abs(w) - 1.0) < torus_tol) ++rs.on_torus_count;
    return rs;
}

double mean_log_abs(const TrigPoly& poly, double y) {
    RootSet rs = torus_roots(poly);
    const double r = std::exp(-kTwoPi * y);
    double v = kTwoPi * poly.degree() * y + std::log(rs.leading_modulus);
    for (const cplx& w : rs.roots) v += std::log(std::max(r, std::abs(w)));
    return v;
}

ModelSpec ModelSpec::make(TrigPoly a, TrigPoly b, double torus_tol) {
    if (!a.real_on_torus()) throw Error("diagonal coefficient must be real on the torus");
    if (b.is_zero()) throw IdenticallyZero();
    ModelSpec m;
    m.a = std::move(a);
    m.b = std::move(b);
    m.b_tilde = m.b.conj_reflect();
    m.d0 = std::max(m.a.degree(), m.b.degree());
    m.n_b = torus_roots(m.b, torus_tol).on_torus_count;
    m.p = 1.0 / (m.n_b + 2.0 * m.d0);
    return m;
}

ModelSpec ModelSpec::almost_mathieu(double lambda) {
    return make(TrigPoly::cosine(2.0 * lambda), TrigPoly::constant(1.0));
}

ModelSpec ModelSpec::extended_harper(double lambda, double l1, double l2, double l3,
                                     double omega) {
    const cplx phase = std::polar(1.0, std::numbers::pi * omega);  // e^{pi i omega}
    std::vector<cplx> c = {l3 * std::conj(phase), cplx(l2), l1 * phase};
    return make(TrigPoly::cosine(2.0 * lambda), TrigPoly::from_coefficients(std::move(c)));
}

}  // namespace qpjac
