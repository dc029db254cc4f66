#include "qpjac/ids.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qpjac {

namespace {

double phase_offset(std::uint64_t seed, std::uint64_t tag) {
    std::mt19937_64 rng(mix_seed(seed, tag));
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double grid_phase(long long i, long long M, double offset) {
    double x = static_cast<double>(i) / static_cast<double>(M) + offset;
    return x - std::floor(x);
}

}  // namespace

double ids_finite(const ModelSpec& model, double x, const Frequency& freq, long long N,
                  double E) {
    return static_cast<double>(count_below(model, x, freq, {0, N - 1}, E)) /
           static_cast<double>(N);
}

MeanStd ids_avg(const ModelSpec& model, const Frequency& freq, long long N, double E,
                long long M, std::uint64_t seed) {
    IDSCurve c = ids_curve(model, freq, N, {E}, M, seed);
    return {c.values[0], c.std_errors[0]};
}

IDSCurve ids_curve(const ModelSpec& model, const Frequency& freq, long long N,
                   std::vector<double> energies, long long M, std::uint64_t seed) {
    if (M < 2) throw Error("ids_curve requires M >= 2");
    if (!std::is_sorted(energies.begin(), energies.end()))
        throw Error("energy grid must be ascending");
    const double offset = phase_offset(seed, 0x1d5);
    const size_t ne = energies.size();

    // One Sturm reduction per phase, swept over every energy.
    std::vector<std::vector<double>> per_phase(static_cast<size_t>(M));
    parallel_for(M, [&](long long i) {
        SturmSeed sturm(model, grid_phase(i, M, offset), freq, {0, N - 1});
        std::vector<double>& row = per_phase[static_cast<size_t>(i)];
        row.resize(ne);
        for (size_t e = 0; e < ne; ++e)
            row[e] = static_cast<double>(sturm.count_below(energies[e])) /
                     static_cast<double>(N);
    });

    IDSCurve curve;
    curve.N = N;
    curve.samples = M;
    curve.energies = std::move(energies);
    std::vector<double> column(static_cast<size_t>(M));
    for (size_t e = 0; e < ne; ++e) {
        for (size_t i = 0; i < static_cast<size_t>(M); ++i) column[i] = per_phase[i][e];
        MeanStd ms = mean_std(column);
        curve.values.push_back(ms.value);
        curve.std_errors.push_back(ms.std_error);
    }
    return curve;
}

WegnerIntegralResult wegner_integral(const ModelSpec& model, const Frequency& freq,
                                     long long N, double E, double eta, long long M,
                                     std::uint64_t seed, double eps_holder, double gamma,
                                     double L_est) {
    if (eta <= 0.0) throw Error("wegner_integral requires eta > 0");
    WegnerIntegralResult r;
    r.p = model.p;
    r.eps_holder = eps_holder;
    const double eta_lo = 10.0 * std::pow(1.0 / static_cast<double>(N), 1.0 / model.p);
    const double eta_hi = 1.0 / static_cast<double>(N);
    r.eta_in_range = eta >= eta_lo && eta <= eta_hi;

    if (std::isnan(L_est)) {
        LyapunovEstimate le = lyapunov_estimate(model, 0.0, freq, cplx(E, 0.0),
                                                std::min<long long>(N, 512), 64,
                                                mix_seed(seed, 0xa11));
        L_est = le.L;
    }
    r.L_estimate = L_est;
    r.hypothesis_violated = !(L_est > gamma);

    const double offset = phase_offset(seed, 0x2d5);
    std::vector<double> counts(static_cast<size_t>(M));
    parallel_for(M, [&](long long i) {
        SturmSeed sturm(model, grid_phase(i, M, offset), freq, {0, N - 1});
        counts[static_cast<size_t>(i)] = static_cast<double>(
            sturm.count_below(E + eta) - sturm.count_below(E - eta));
    });
    r.integral = mean_std(counts).value;
    r.bound = static_cast<double>(N) * std::pow(eta, model.p - eps_holder);
    r.pass = r.integral <= r.bound;
    return r;
}

MultiscaleIDSResult multiscale_ids_check(const ModelSpec& model, const Frequency& freq,
                                         long long N, long long m, double I_lo,
                                         double I_hi, long long M, std::uint64_t seed) {
    if (m < 2) throw Error("multiscale_ids_check requires m >= 2");
    if (m * N > 4096 * 8) throw Error("mN beyond oracle scale");
    const double offset = phase_offset(seed, 0x3d5);
    std::vector<double> lhs(static_cast<size_t>(M)), rhs(static_cast<size_t>(M));
    parallel_for(M, [&](long long i) {
        double x = grid_phase(i, M, offset);
        SturmSeed big(model, x, freq, {0, m * N - 1});
        SturmSeed small(model, x, freq, {0, N - 1});
        lhs[static_cast<size_t>(i)] =
            static_cast<double>(big.count_below(I_hi) - big.count_below(I_lo)) /
            static_cast<double>(m * N);
        rhs[static_cast<size_t>(i)] =
            static_cast<double>(small.count_below(I_hi) - small.count_below(I_lo)) /
            static_cast<double>(N);
    });
    MeanStd ml = mean_std(lhs), mr = mean_std(rhs);
    MultiscaleIDSResult res;
    res.lhs = ml.value;
    res.lhs_se = ml.std_error;
    res.rhs = mr.value + 4.0 / static_cast<double>(N);
    res.rhs_se = mr.std_error;
    double slack = 2.0 * std::sqrt(ml.std_error * ml.std_error + mr.std_error * mr.std_error);
    res.pass = res.lhs <= res.rhs + slack;
    return res;
}

HolderFit fit_power_law(double E, std::vector<double> eta_grid, std::vector<double> moduli,
                        std::vector<double> moduli_se, double p, double eps_holder) {
    if (eta_grid.size() < 6) throw Error("eta grid needs at least 6 points");
    if (moduli.size() != eta_grid.size() || moduli_se.size() != eta_grid.size())
        throw Error("modulus arrays must match the eta grid");
    HolderFit fit;
    fit.E = E;
    fit.eta_grid = std::move(eta_grid);
    fit.moduli = std::move(moduli);
    fit.moduli_se = std::move(moduli_se);
    fit.predicted_p = p;

    std::vector<double> lx, ly;
    for (size_t i = 0; i < fit.eta_grid.size(); ++i) {
        if (fit.moduli[i] > 3.0 * fit.moduli_se[i] && fit.moduli[i] > 0.0) {
            lx.push_back(std::log(fit.eta_grid[i]));
            ly.push_back(std::log(fit.moduli[i]));
        }
    }
    fit.points_used = static_cast<long long>(lx.size());
    if (lx.size() < 4)
        throw InsufficientSignal("fewer than 4 grid points carry modulus above noise");

    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.exponent = sxy / sxx;
    double intercept = my - fit.exponent * mx;
    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
        double pred = intercept + fit.exponent * lx[i];
        ss_res += (ly[i] - pred) * (ly[i] - pred);
        ss_tot += (ly[i] - my) * (ly[i] - my);
    }
    fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    fit.exponent_vs_p = fit.exponent - (p - eps_holder);
    return fit;
}

HolderFit holder_fit(const ModelSpec& model, const Frequency& freq, long long N, double E,
                     std::vector<double> eta_grid, long long M, std::uint64_t seed,
                     double eps_holder) {
    if (eta_grid.size() < 6) throw Error("eta grid needs at least 6 points");
    if (!std::is_sorted(eta_grid.begin(), eta_grid.end()))
        throw Error("eta grid must be ascending");
    const double offset = phase_offset(seed, 0x4d5);
    const size_t ne = eta_grid.size();

    std::vector<std::vector<double>> per_phase(static_cast<size_t>(M));
    parallel_for(M, [&](long long i) {
        SturmSeed sturm(model, grid_phase(i, M, offset), freq, {0, N - 1});
        std::vector<double>& row = per_phase[static_cast<size_t>(i)];
        row.resize(ne);
        for (size_t e = 0; e < ne; ++e)
            row[e] = static_cast<double>(sturm.count_below(E + eta_grid[e]) -
                                         sturm.count_below(E - eta_grid[e])) /
                     static_cast<double>(N);
    });

    std::vector<double> moduli(ne), se(ne), column(static_cast<size_t>(M));
    for (size_t e = 0; e < ne; ++e) {
        for (size_t i = 0; i < static_cast<size_t>(M); ++i) column[i] = per_phase[i][e];
        MeanStd ms = mean_std(column);
        moduli[e] = ms.value;
        se[e] = ms.std_error;
    }
    return fit_power_law(E, std::move(eta_grid), std::move(moduli), std::move(se), model.p,
                         eps_holder);
}

GateReport theorem_gate(const GateConfig& config) {
    GateReport rep;
    const double omega_value =
        config.omega > 0.0 ? config.omega : (std::sqrt(5.0) - 1.0) / 2.0;
    rep.freq = check_diophantine(omega_value, config.dioph_c, config.dioph_alpha,
                                 config.certify_N);
    rep.n_b = config.model.n_b;
    rep.d0 = config.model.d0;
    rep.p = config.model.p;

    const long long ecount = std::max<long long>(config.energy_count, 1);
    for (long long j = 0; j < ecount; ++j) {
        double t = (static_cast<double>(j) + 0.5) / static_cast<double>(ecount);
        rep.energy_grid.push_back(config.I_lo + t * (config.I_hi - config.I_lo));
    }

    for (size_t j = 0; j < rep.energy_grid.size(); ++j) {
        LyapunovEstimate le =
            lyapunov_estimate(config.model, 0.0, rep.freq, cplx(rep.energy_grid[j], 0.0),
                              config.lyap_N, config.lyap_M, mix_seed(config.seed, j));
        rep.lyapunov.push_back(le);
        if (!(le.L > config.gamma)) rep.hypothesis_violated = true;
    }
    if (rep.hypothesis_violated) return rep;

    rep.wegner_all_pass = true;
    for (size_t nidx = 0; nidx < config.N_list.size(); ++nidx) {
        long long N = config.N_list[nidx];
        double eta = 1.0 / static_cast<double>(N);
        for (size_t j = 0; j < rep.energy_grid.size(); ++j) {
            GateWegnerRow row;
            row.E = rep.energy_grid[j];
            row.eta = eta;
            row.N = N;
            row.result = wegner_integral(config.model, rep.freq, N, row.E, eta,
                                         config.phases, mix_seed(config.seed, 1000 + j),
                                         config.eps_holder, config.gamma,
                                         rep.lyapunov[j].L);
            if (row.result.eta_in_range && !row.result.pass) rep.wegner_all_pass = false;
            rep.wegner.push_back(row);
        }
    }

    long long fitted = 0, fit_pass = 0;
    for (size_t j = 0; j < rep.energy_grid.size(); ++j) {
        GateHolderRow row;
        row.E = rep.energy_grid[j];
        row.ids_value = ids_avg(config.model, rep.freq, config.N_holder, row.E,
                                config.phases, mix_seed(config.seed, 2000 + j))
                            .value;
        if (row.ids_value < 0.2 || row.ids_value > 0.8) {
            row.note = "skipped: ids outside [0.2, 0.8]";
            rep.holder.push_back(row);
            continue;
        }
        try {
            row.fit = holder_fit(config.model, rep.freq, config.N_holder, row.E,
                                 config.eta_grid, config.phases,
                                 mix_seed(config.seed, 3000 + j), config.eps_holder);
            ++fitted;
            if (row.fit->exponent >= rep.p - config.eps_holder &&
                row.fit->r_squared >= 0.9)
                ++fit_pass;
        } catch (const InsufficientSignal& e) {
            row.note = e.what();
        }
        rep.holder.push_back(row);
    }
    rep.holder_all_pass =
        fitted > 0 && static_cast<double>(fit_pass) >= 0.8 * static_cast<double>(fitted);
    return rep;
}

}  // namespace qpjac
