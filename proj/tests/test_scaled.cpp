#include <doctest.h>

#include <cmath>
#include <random>

#include "qpjac/scaled.hpp"

using namespace qpjac;

namespace {
ScaledMatrix2 random_matrix(std::mt19937_64& rng, double lo = 1e-3, double hi = 1e3) {
    std::uniform_real_distribution<double> mag(std::log(lo), std::log(hi));
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    auto entry = [&]() { return std::polar(std::exp(mag(rng)), ang(rng)); };
    return ScaledMatrix2::from_entries(entry(), entry(), entry(), entry());
}
}  // namespace

TEST_CASE("scaled complex normalization and log magnitude") {
    ScaledComplex z(cplx(3.0, 4.0));
    CHECK(std::abs(z.mantissa()) >= 0.5);
    CHECK(std::abs(z.mantissa()) < 1.0);
    CHECK(z.log_abs() == doctest::Approx(std::log(5.0)).epsilon(1e-14));
    CHECK(ScaledComplex().is_zero());
    CHECK(ScaledComplex().exp2() == 0);

    // huge exponents survive round trips through multiplication
    ScaledComplex big = ScaledComplex::from_parts(cplx(0.75, 0), 40000);
    CHECK((big * big).log_abs() == doctest::Approx(2 * big.log_abs()).epsilon(1e-13));
}

TEST_CASE("scaled complex addition aligns exponents and drops tiny summands") {
    ScaledComplex a = ScaledComplex::from_parts(cplx(0.5, 0), 400);
    ScaledComplex b = ScaledComplex::from_parts(cplx(0.5, 0), 0);
    CHECK((a + b).log_abs() == a.log_abs());  // 400 bits apart: b dropped
    ScaledComplex c = ScaledComplex::from_parts(cplx(0.5, 0), 10);
    ScaledComplex d = ScaledComplex::from_parts(cplx(-0.5, 0), 10);
    CHECK((c + d).is_zero());
    ScaledComplex e = ScaledComplex(cplx(1.0, 0)) + ScaledComplex(cplx(0.5, 0));
    CHECK(e.log_abs() == doctest::Approx(std::log(1.5)).epsilon(1e-14));
}

TEST_CASE("matrix product: identity, exponent addition, associativity") {
    std::mt19937_64 rng(7);
    ScaledMatrix2 A = random_matrix(rng);
    ScaledMatrix2 I = ScaledMatrix2::identity();
    CHECK(log_two_norm(A * I) == doctest::Approx(log_two_norm(A)).epsilon(1e-14));

    ScaledMatrix2 D = ScaledMatrix2::from_entries(cplx(1), cplx(0), cplx(0), cplx(1), 1000);
    ScaledMatrix2 DD = D * D;
    CHECK(DD.exp2() + static_cast<int64_t>(std::log2(std::abs(DD.entry(0, 0)))) == 2000);
    CHECK(log_abs_det(DD) == doctest::Approx(4000.0 * kLog2).epsilon(1e-14));

    // associativity against a plain double oracle at small exponents
    for (int trial = 0; trial < 50; ++trial) {
        ScaledMatrix2 X = random_matrix(rng), Y = random_matrix(rng), Z = random_matrix(rng);
        double left = log_two_norm((X * Y) * Z);
        double right = log_two_norm(X * (Y * Z));
        CHECK(left == doctest::Approx(right).epsilon(1e-12));

        cplx x[4], y[4], z[4], xy[4], xyz[4];
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                x[2 * r + c] = X.entry(r, c) * std::pow(2.0, double(X.exp2()));
                y[2 * r + c] = Y.entry(r, c) * std::pow(2.0, double(Y.exp2()));
                z[2 * r + c] = Z.entry(r, c) * std::pow(2.0, double(Z.exp2()));
            }
        auto mul = [](const cplx* a, const cplx* b, cplx* out) {
            out[0] = a[0] * b[0] + a[1] * b[2];
            out[1] = a[0] * b[1] + a[1] * b[3];
            out[2] = a[2] * b[0] + a[3] * b[2];
            out[3] = a[2] * b[1] + a[3] * b[3];
        };
        mul(x, y, xy);
        mul(xy, z, xyz);
        ScaledMatrix2 ref = ScaledMatrix2::from_entries(xyz[0], xyz[1], xyz[2], xyz[3]);
        CHECK(left == doctest::Approx(log_two_norm(ref)).epsilon(1e-10));
    }
}

TEST_CASE("log_two_norm closed forms") {
    CHECK(log_two_norm(ScaledMatrix2::identity()) == doctest::Approx(0.0).epsilon(1e-15));
    ScaledMatrix2 ones = ScaledMatrix2::from_entries(cplx(1), cplx(1), cplx(1), cplx(1));
    CHECK(log_two_norm(ones) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    ScaledMatrix2 diag = ScaledMatrix2::from_entries(cplx(3), cplx(0), cplx(0), cplx(1.0 / 3));
    CHECK(log_two_norm(diag) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(log_two_norm(ScaledMatrix2()), ZeroMatrix);
}

TEST_CASE("log_abs_det closed forms") {
    CHECK(log_abs_det(ScaledMatrix2::identity()) == doctest::Approx(0.0).epsilon(1e-15));
    ScaledMatrix2 two = ScaledMatrix2::from_entries(cplx(2), cplx(0), cplx(0), cplx(2));
    CHECK(log_abs_det(two) == doctest::Approx(std::log(4.0)).epsilon(1e-14));
    double th = 0.7;
    ScaledMatrix2 rot = ScaledMatrix2::from_entries(
        cplx(std::cos(th)), cplx(-std::sin(th)), cplx(std::sin(th)), cplx(std::cos(th)));
    CHECK(log_abs_det(rot) == doctest::Approx(0.0).epsilon(1e-14));
    ScaledMatrix2 sing = ScaledMatrix2::from_entries(cplx(1), cplx(1), cplx(1), cplx(1));
    CHECK_THROWS_AS(log_abs_det(sing), SingularMatrix);
}

TEST_CASE("submultiplicativity and det multiplicativity") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        ScaledMatrix2 A = random_matrix(rng), B = random_matrix(rng);
        CHECK(log_two_norm(A * B) <= log_two_norm(A) + log_two_norm(B) + 1e-10);
        CHECK(log_abs_det(A * B) ==
              doctest::Approx(log_abs_det(A) + log_abs_det(B)).epsilon(1e-10));
    }
}

TEST_CASE("round trip through plain complex entries") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        ScaledMatrix2 A = random_matrix(rng, 1e-3, 1e3);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                cplx v = A.scaled_entry(r, c).to_complex();
                ScaledComplex back(v);
                CHECK(back.log_abs() ==
                      doctest::Approx(A.scaled_entry(r, c).log_abs()).epsilon(1e-14));
            }
    }
}
