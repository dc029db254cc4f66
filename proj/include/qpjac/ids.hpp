#pragma once

// Finite-scale integrated density of states, phase-averaged curves, the
// energy-window count integral, the two-scale counting inequality, and the
// Holder modulus fit with the end-to-end gate.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpjac/frequency.hpp"
#include "qpjac/jacobi.hpp"
#include "qpjac/lyapunov.hpp"
#include "qpjac/parallel.hpp"
#include "qpjac/trigpoly.hpp"

namespace qpjac {

/// Normalized eigenvalue count below E for one phase.
double ids_finite(const ModelSpec& model, double x, const Frequency& freq, long long N,
                  double E);

/// Mean and standard error of ids_finite over the offset phase grid.
MeanStd ids_avg(const ModelSpec& model, const Frequency& freq, long long N, double E,
                long long M, std::uint64_t seed);

struct IDSCurve {
    long long N = 0;
    long long samples = 0;
    std::vector<double> energies;
    std::vector<double> values;
    std::vector<double> std_errors;
};

/// ids_avg over an ascending energy grid, sharing the per-phase reductions.
IDSCurve ids_curve(const ModelSpec& model, const Frequency& freq, long long N,
                   std::vector<double> energies, long long M, std::uint64_t seed);

struct WegnerIntegralResult {
    double integral = 0.0;   // phase average of the window eigenvalue count
    double bound = 0.0;      // N * eta^{p - eps_holder}
    bool pass = false;
    bool eta_in_range = true;        // eta in [10 (1/N)^{1/p}, 1/N]
    bool hypothesis_violated = false;  // Lyapunov estimate at E fell below gamma
    double L_estimate = 0.0;
    double p = 0.0;
    double eps_holder = 0.0;
};

/// Phase-averaged eigenvalue count in [E-eta, E+eta) against N eta^{p-eps}.
/// Out-of-range eta and a failing Lyapunov floor are reported, not fatal.
/// Pass L_est = NaN to have the floor re-estimated internally.
WegnerIntegralResult wegner_integral(const ModelSpec& model, const Frequency& freq,
                                     long long N, double E, double eta, long long M,
                                     std::uint64_t seed, double eps_holder = 0.1,
                                     double gamma = 0.01,
                                     double L_est = std::numeric_limits<double>::quiet_NaN());

struct MultiscaleIDSResult {
    double lhs = 0.0;  // (1/(mN)) avg |spec(H_mN) cap I|
    double rhs = 0.0;  // (1/N)  avg |spec(H_N)  cap I| + 4/N
    double lhs_se = 0.0;
    double rhs_se = 0.0;
    bool pass = false;  // lhs <= rhs + 2 * combined sampling error
};

MultiscaleIDSResult multiscale_ids_check(const ModelSpec& model, const Frequency& freq,
                                         long long N, long long m, double I_lo,
                                         double I_hi, long long M, std::uint64_t seed);

struct HolderFit {
    double E = 0.0;
    std::vector<double> eta_grid;
    std::vector<double> moduli;      // ids(E+eta) - ids(E-eta)
    std::vector<double> moduli_se;
    double exponent = 0.0;           // log-log slope over points above noise
    double r_squared = 0.0;
    double predicted_p = 0.0;        // 1 / (n_b + 2 d0)
    double exponent_vs_p = 0.0;      // exponent - (p - eps_holder)
    long long points_used = 0;
};

/// Least-squares slope of log(modulus) against log(eta), restricted to grid
/// points with modulus > 3 * standard error.  Throws InsufficientSignal when
/// fewer than 4 points qualify.
HolderFit holder_fit(const ModelSpec& model, const Frequency& freq, long long N, double E,
                     std::vector<double> eta_grid, long long M, std::uint64_t seed,
                     double eps_holder = 0.1);

/// The regression backing holder_fit, usable on synthetic moduli.
HolderFit fit_power_law(double E, std::vector<double> eta_grid, std::vector<double> moduli,
                        std::vector<double> moduli_se, double p, double eps_holder);

struct GateConfig {
    ModelSpec model;
    double omega = 0.0;
    double dioph_c = 0.2;
    double dioph_alpha = 2.0;
    long long certify_N = 1'000'000;
    double I_lo = -1.0, I_hi = 1.0;
    long long energy_count = 8;
    std::vector<long long> N_list = {256, 512};
    long long N_holder = 2048;
    long long phases = 128;
    std::vector<double> eta_grid = {1.0000e-3, 1.3895e-3, 1.9307e-3, 2.6827e-3,
                                    3.7276e-3, 5.1795e-3, 7.1969e-3, 1.0000e-2};
    double eps_holder = 0.1;
    double gamma = 0.05;
    long long lyap_N = 1024;
    long long lyap_M = 128;
    std::uint64_t seed = 1;
};

struct GateWegnerRow {
    double E = 0.0;
    double eta = 0.0;
    long long N = 0;
    WegnerIntegralResult result;
};

struct GateHolderRow {
    double E = 0.0;
    double ids_value = 0.0;
    std::optional<HolderFit> fit;   // empty on InsufficientSignal
    std::string note;
};

struct GateReport {
    Frequency freq;
    int n_b = 0;
    int d0 = 0;
    double p = 0.0;
    bool hypothesis_violated = false;
    std::vector<double> energy_grid;
    std::vector<LyapunovEstimate> lyapunov;
    std::vector<GateWegnerRow> wegner;
    std::vector<GateHolderRow> holder;
    bool wegner_all_pass = false;
    bool holder_all_pass = false;
};

/// End-to-end pipeline: certify the frequency, derive (n_b, d0, p), check the
/// Lyapunov floor on the energy interval, then run the window-count integral
/// over the (E, eta) grid and the Holder fit per selected energy.
/// Never throws on a hypothesis violation; the report carries the flag.
GateReport theorem_gate(const GateConfig& config);

}  // namespace qpjac
