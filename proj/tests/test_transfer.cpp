#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qpjac/transfer.hpp"

using namespace qpjac;

TEST_CASE("monodromy single factor and two-factor product") {
    const Frequency& f = oracles::golden();
    ModelSpec amo = ModelSpec::almost_mathieu(3.0);
    cplx z(0.31, 0.02), E(0.7, 0.1);
    long long alpha = 4;

    ScaledMatrix2 M1 = monodromy(amo, z, f, E, {alpha, alpha});
    cplx za = z + static_cast<double>(alpha) * f.omega;
    cplx za1 = z + static_cast<double>(alpha + 1) * f.omega;
    CHECK(std::abs(M1.scaled_entry(0, 0).to_complex() - (amo.a.eval(za) - E)) < 1e-13);
    CHECK(std::abs(M1.scaled_entry(0, 1).to_complex() - (-amo.b_tilde.eval(za))) < 1e-13);
    CHECK(std::abs(M1.scaled_entry(1, 0).to_complex() - amo.b.eval(za1)) < 1e-13);
    CHECK(M1.scaled_entry(1, 1).is_zero());

    ScaledMatrix2 M2 = monodromy(amo, z, f, E, {alpha, alpha + 1});
    ScaledMatrix2 F1 = monodromy(amo, z, f, E, {alpha + 1, alpha + 1});
    ScaledMatrix2 prod = F1 * M1;
    CHECK(log_two_norm(M2) == doctest::Approx(log_two_norm(prod)).epsilon(1e-13));
}

TEST_CASE("rotation cocycle has norm one") {
    const Frequency& f = oracles::golden();
    ModelSpec fl = ModelSpec::make(TrigPoly::constant(0.0), TrigPoly::constant(1.0));
    ScaledMatrix2 M = monodromy(fl, cplx(0.4), f, cplx(0.0), {0, 999});
    CHECK(log_two_norm(M) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dirichlet determinant: small closed forms") {
    const Frequency& f = oracles::golden();
    ModelSpec eh = ModelSpec::extended_harper(2.0, 1.0, 0.5, 0.7, f.omega);
    cplx z(0.11, 0.0), E(0.3, 0.2);
    long long alpha = 7;

    CHECK(dirichlet_det(eh, z, f, E, alpha, alpha - 1).log_abs() == 0.0);  // empty = 1
    CHECK(dirichlet_det(eh, z, f, E, alpha, alpha - 2).is_zero());         // length -1 = 0

    cplx za = z + static_cast<double>(alpha) * f.omega;
    cplx d1 = dirichlet_det(eh, z, f, E, alpha, alpha).mantissa() *
              std::pow(2.0, double(dirichlet_det(eh, z, f, E, alpha, alpha).exp2()));
    CHECK(std::abs(d1 - (eh.a.eval(za) - E)) < 1e-13);

    cplx zb = z + static_cast<double>(alpha + 1) * f.omega;
    cplx expect2 = (eh.a.eval(za) - E) * (eh.a.eval(zb) - E) -
                   eh.b.eval(zb) * eh.b_tilde.eval(zb);
    ScaledComplex d2 = dirichlet_det(eh, z, f, E, alpha, alpha + 1);
    CHECK(std::abs(d2.to_complex() - expect2) < 1e-12 * std::abs(expect2));
}

TEST_CASE("dirichlet determinant against dense LU") {
    const Frequency& f = oracles::golden();
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ux(0.0, 1.0), ue(-4.0, 4.0), uim(0.05, 0.3);
    for (ModelSpec model : {ModelSpec::almost_mathieu(3.0),
                            ModelSpec::extended_harper(3.0, 1.0, 1.0, 1.0, f.omega)}) {
        for (int trial = 0; trial < 30; ++trial) {
            long long n = std::uniform_int_distribution<long long>(1, 64)(rng);
            IndexInterval lam{0, n - 1};
            cplx z(ux(rng), 0.0);
            cplx E(ue(rng), uim(rng));
            auto [log_ref, arg_ref] = oracles::dense_log_det(model, z, f, lam, E);
            ScaledComplex mine = dirichlet_det(model, z, f, E, lam);
            CHECK(mine.log_abs() == doctest::Approx(log_ref).epsilon(1e-9));
            double dphase = std::remainder(mine.arg() - arg_ref, 2.0 * std::numbers::pi);
            CHECK(std::abs(dphase) < 1e-8);
        }
    }
}

TEST_CASE("determinant is entire: finite at zeros of b") {
    const Frequency& f = oracles::golden();
    // b = 1 + 2cos(2 pi (x + w/2)) vanishes on the torus
    ModelSpec eh = ModelSpec::extended_harper(3.0, 1.0, 1.0, 1.0, f.omega);
    RootSet rs = torus_roots(eh.b);
    REQUIRE(rs.on_torus_count > 0);
    for (const cplx& w : rs.roots) {
        if (std::abs(std::abs(w) - 1.0) > 1e-8) continue;
        double x0 = std::arg(w) / (2.0 * std::numbers::pi);
        ScaledComplex v = dirichlet_det(eh, cplx(x0), f, cplx(0.9, 0.0), 0, 199);
        CHECK(std::isfinite(v.log_abs()));
    }
}

TEST_CASE("characteristic polynomial is real for real inputs") {
    const Frequency& f = oracles::golden();
    ModelSpec eh = ModelSpec::extended_harper(2.0, 0.8, 0.3, 0.9, f.omega);
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> ux(0.0, 1.0), ue(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        ScaledComplex v = dirichlet_det(eh, cplx(ux(rng)), f, cplx(ue(rng)), 0, 99);
        CHECK(std::abs(v.mantissa().imag()) <= 1e-12 * std::abs(v.mantissa()));
    }
}

TEST_CASE("birkhoff sums") {
    const Frequency& f = oracles::golden();
    ModelSpec fl = ModelSpec::make(TrigPoly::constant(0.0), TrigPoly::constant(1.0));
    CHECK(birkhoff_sum(fl, cplx(0.3), f, 500, false) == 0.0);

    ModelSpec eh = ModelSpec::extended_harper(2.0, 1.0, 0.5, 0.7, f.omega);
    cplx z(0.21, 0.05);
    CHECK(birkhoff_sum(eh, z, f, 1, false) ==
          doctest::Approx(std::log(std::abs(eh.b.eval(z)))).epsilon(1e-14));
    // S_N = S~_N on the real axis
    double x = 0.77;
    CHECK(birkhoff_sum(eh, cplx(x), f, 200, false) ==
          doctest::Approx(birkhoff_sum(eh, cplx(x), f, 200, true)).epsilon(1e-12));
}

TEST_CASE("cocycle partition property") {
    const Frequency& f = oracles::golden();
    ModelSpec amo = ModelSpec::almost_mathieu(3.0);
    cplx z(0.37, 0.01), E(0.4, 0.15);
    ScaledMatrix2 whole = monodromy(amo, z, f, E, {0, 999});
    ScaledMatrix2 parts = monodromy(amo, z, f, E, {700, 999}) *
                          (monodromy(amo, z, f, E, {250, 699}) *
                           monodromy(amo, z, f, E, {0, 249}));
    CHECK(std::abs(log_two_norm(whole) - log_two_norm(parts)) < 1e-9);
}

TEST_CASE("entry identity: top-left equals the Dirichlet determinant") {
    const Frequency& f = oracles::golden();
    ModelSpec eh = ModelSpec::extended_harper(3.0, 1.0, 1.0, 1.0, f.omega);
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> ux(0.0, 1.0), ue(-4.0, 4.0), uim(0.05, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
        cplx z(ux(rng), 0.0);
        cplx E(ue(rng), uim(rng));
        IndexInterval lam{0, 499};
        ScaledComplex tl = monodromy(eh, z, f, E, lam).scaled_entry(0, 0);
        ScaledComplex det = dirichlet_det(eh, z, f, E, lam);
        CHECK(std::abs(tl.log_abs() - det.log_abs()) < 1e-9);
        CHECK(std::abs(std::remainder(tl.arg() - det.arg(), 2.0 * std::numbers::pi)) <
              1e-9);
    }
}

TEST_CASE("identity residuals at floating point scale") {
    const Frequency& f = oracles::golden();
    ModelSpec fl = ModelSpec::make(TrigPoly::constant(0.0), TrigPoly::constant(1.0));

    // b = 1: the unregularized and entire products coincide
    IdentityResiduals r0 = identity_residuals(fl, cplx(0.3), f, cplx(10.0, 0.0), {0, 99});
    CHECK(r0.mu_ma == 0.0);

    // rotation: det = 1, Birkhoff sums = 0
    IdentityResiduals rr = identity_residuals(fl, cplx(0.3), f, cplx(0.0), {0, 99});
    CHECK(rr.det_birkhoff == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> ux(0.0, 1.0), ue(-4.0, 4.0), uim(0.05, 0.3);
    for (ModelSpec model : {ModelSpec::almost_mathieu(3.0),
                            ModelSpec::extended_harper(3.0, 1.0, 1.0, 1.0, f.omega)}) {
        for (int trial = 0; trial < 10; ++trial) {
            cplx z(ux(rng), 0.0);
            cplx E(ue(rng), uim(rng));
            IdentityResiduals r = identity_residuals(model, z, f, E, {0, 499});
            CHECK(r.mu_ma < 1e-9);
            CHECK(r.ma_fa < 1e-9);
            CHECK(r.det_birkhoff < 1e-9);
        }
    }
}
