#pragma once

// Extended-exponent complex scalars and 2x2 matrices.  Transfer-matrix
// products reach magnitudes exp(N*L) with N*L ~ 2e4, far beyond double
// range, so values are carried as (mantissa, power-of-2 exponent) pairs
// with exact integer exponent arithmetic and log-magnitudes extracted
// without ever forming the full value.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

#include "qpjac/errors.hpp"

namespace qpjac {

using cplx = std::complex<double>;

inline constexpr double kLog2 = 0.69314718055994530941723212145818;

// Summands whose exponents differ by more than this many bits are dropped
// on addition; entries this far below a matrix's largest entry are flushed.
inline constexpr int64_t kScaledDropBits = 200;

/// Complex number v = mantissa * 2^exponent with |mantissa| in [1/2, 1),
/// or the canonical zero (0, 0).
class ScaledComplex {
  public:
    ScaledComplex() : m_(0.0, 0.0), e_(0) {}
    ScaledComplex(cplx v) : m_(v), e_(0) { normalize(); }
    ScaledComplex(double v) : m_(v, 0.0), e_(0) { normalize(); }
    static ScaledComplex from_parts(cplx mantissa, int64_t exp2) {
        ScaledComplex s;
        s.m_ = mantissa;
        s.e_ = exp2;
        s.normalize();
        return s;
    }

    bool is_zero() const { return m_ == cplx(0.0, 0.0); }
    cplx mantissa() const { return m_; }
    int64_t exp2() const { return e_; }

    /// log|v|; -inf for the canonical zero.
    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(m_)) + static_cast<double>(e_) * kLog2;
    }
    double arg() const { return std::arg(m_); }

    /// May overflow/underflow to inf/0 when the exponent is large; callers
    /// that survive that use log_abs instead.
    cplx to_complex() const {
        return cplx(std::ldexp(m_.real(), static_cast<int>(e_)),
                    std::ldexp(m_.imag(), static_cast<int>(e_)));
    }

    friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero() || b.is_zero()) return ScaledComplex();
        return from_parts(a.m_ * b.m_, a.e_ + b.e_);
    }
    friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
        if (b.is_zero()) throw SingularDenominator();
        if (a.is_zero()) return ScaledComplex();
        return from_parts(a.m_ / b.m_, a.e_ - b.e_);
    }
    friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.e_ - b.e_ > kScaledDropBits) return a;
        if (b.e_ - a.e_ > kScaledDropBits) return b;
        if (a.e_ >= b.e_) {
            cplx small(std::ldexp(b.m_.real(), static_cast<int>(b.e_ - a.e_)),
                       std::ldexp(b.m_.imag(), static_cast<int>(b.e_ - a.e_)));
            return from_parts(a.m_ + small, a.e_);
        }
        return b + a;
    }
    friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
        return a + ScaledComplex::from_parts(-b.m_, b.e_);
    }
    ScaledComplex& operator*=(const ScaledComplex& o) { return *this = *this * o; }

  private:
    void normalize() {
        double s = std::abs(m_);
        if (!std::isfinite(s)) throw Error("non-finite value in scaled arithmetic");
        if (s == 0.0) {
            m_ = cplx(0.0, 0.0);
            e_ = 0;
            return;
        }
        int k = 0;
        std::frexp(s, &k);  // s = f * 2^k, f in [1/2, 1)
        if (k != 0) {
            m_ = cplx(std::ldexp(m_.real(), -k), std::ldexp(m_.imag(), -k));
            e_ += k;
        }
    }

    cplx m_;
    int64_t e_;
};

/// 2x2 complex matrix 2^exponent * entries with one shared exponent and
/// max entry magnitude in [1/2, 1) (unless identically zero).
class ScaledMatrix2 {
  public:
    ScaledMatrix2() : a_{cplx(0), cplx(0), cplx(0), cplx(0)}, e_(0) {}

    static ScaledMatrix2 identity() {
        return from_entries(cplx(1), cplx(0), cplx(0), cplx(1));
    }
    static ScaledMatrix2 from_entries(cplx a11, cplx a12, cplx a21, cplx a22,
                                      int64_t exp2 = 0) {
        ScaledMatrix2 m;
        m.a_ = {a11, a12, a21, a22};
        m.e_ = exp2;
        m.normalize();
        return m;
    }

    bool is_zero() const {
        return a_[0] == cplx(0) && a_[1] == cplx(0) && a_[2] == cplx(0) && a_[3] == cplx(0);
    }
    /// Row-major mantissa entry, r,c in {0,1}.
    cplx entry(int r, int c) const { return a_[2 * r + c]; }
    int64_t exp2() const { return e_; }
    ScaledComplex scaled_entry(int r, int c) const {
        return ScaledComplex::from_parts(a_[2 * r + c], e_);
    }

    friend ScaledMatrix2 operator*(const ScaledMatrix2& A, const ScaledMatrix2& B) {
        ScaledMatrix2 m;
        m.a_ = {A.a_[0] * B.a_[0] + A.a_[1] * B.a_[2],
                A.a_[0] * B.a_[1] + A.a_[1] * B.a_[3],
                A.a_[2] * B.a_[0] + A.a_[3] * B.a_[2],
                A.a_[2] * B.a_[1] + A.a_[3] * B.a_[3]};
        m.e_ = A.e_ + B.e_;
        m.normalize();
        return m;
    }

    /// diag(1,0) * A  (keeps the top row).
    ScaledMatrix2 project_rows() const {
        return from_entries(a_[0], a_[1], cplx(0), cplx(0), e_);
    }
    /// A * diag(1,0)  (keeps the left column).
    ScaledMatrix2 project_cols() const {
        return from_entries(a_[0], cplx(0), a_[2], cplx(0), e_);
    }

    ScaledComplex det() const {
        return ScaledComplex::from_parts(a_[0] * a_[3] - a_[1] * a_[2], 2 * e_);
    }

  private:
    void normalize() {
        double s = 0.0;
        for (const cplx& v : a_) s = std::max(s, std::abs(v));
        if (s == 0.0) {
            e_ = 0;
            return;
        }
        int k = 0;
        std::frexp(s, &k);
        if (k != 0) {
            for (cplx& v : a_)
                v = cplx(std::ldexp(v.real(), -k), std::ldexp(v.imag(), -k));
            e_ += k;
        }
        // Flush entries that fell out of the shared mantissa's range.
        const double floor = std::ldexp(1.0, -static_cast<int>(kScaledDropBits));
        for (cplx& v : a_)
            if (std::abs(v) < floor) v = cplx(0);
    }

    std::array<cplx, 4> a_;  // row-major
    int64_t e_;
};

inline ScaledMatrix2 smat_mul(const ScaledMatrix2& A, const ScaledMatrix2& B) {
    return A * B;
}

/// log of the spectral norm (largest singular value).
/// Uses the closed-form 2x2 SVD via ||A||_F^2 and |det A|.
inline double log_two_norm(const ScaledMatrix2& A) {
    if (A.is_zero()) throw ZeroMatrix();
    double t = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) t += std::norm(A.entry(r, c));
    double d = std::abs(A.entry(0, 0) * A.entry(1, 1) - A.entry(0, 1) * A.entry(1, 0));
    double disc = std::max(0.0, (t - 2.0 * d)) * (t + 2.0 * d);
    double s1sq = 0.5 * (t + std::sqrt(disc));
    return 0.5 * std::log(s1sq) + static_cast<double>(A.exp2()) * kLog2;
}

/// log|det A|; throws SingularMatrix when the determinant mantissa is zero.
inline double log_abs_det(const ScaledMatrix2& A) {
    cplx dm = A.entry(0, 0) * A.entry(1, 1) - A.entry(0, 1) * A.entry(1, 0);
    if (dm == cplx(0)) throw SingularMatrix();
    return std::log(std::abs(dm)) + 2.0 * static_cast<double>(A.exp2()) * kLog2;
}

}  // namespace qpjac
