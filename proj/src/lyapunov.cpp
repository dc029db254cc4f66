#include "qpjac/lyapunov.hpp"

#include <cmath>
#include <random>

#include "qpjac/parallel.hpp"
#include "qpjac/scaled.hpp"
#include "qpjac/transfer.hpp"

namespace qpjac {

LyapunovEstimate lyapunov_estimate(const ModelSpec& model, double y, const Frequency& freq,
                                   cplx E, long long N, long long M, std::uint64_t seed) {
    if (N < 1 || M < 2) throw Error("lyapunov_estimate requires N >= 1, M >= 2");
    std::mt19937_64 rng(mix_seed(seed, 0x1f));
    const double offset = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const IndexInterval lam{0, N - 1};

    std::vector<double> vals(static_cast<size_t>(M));
    parallel_for(M, [&](long long i) {
        double x = static_cast<double>(i) / static_cast<double>(M) + offset;
        x -= std::floor(x);
        ScaledMatrix2 Mx = monodromy(model, cplx(x, y), freq, E, lam);
        vals[static_cast<size_t>(i)] = log_two_norm(Mx) / static_cast<double>(N);
    });

    MeanStd ms = mean_std(vals);
    LyapunovEstimate est;
    est.L_a = ms.value;
    est.D = mean_log_abs(model.b, y);
    est.L = est.L_a - est.D;
    est.y = y;
    est.N = N;
    est.samples = M;
    est.std_error = ms.std_error;
    return est;
}

DeviationProfile deviation_profile(const ModelSpec& model, double y, const Frequency& freq,
                                   cplx E, long long N, long long grid_size,
                                   std::uint64_t seed) {
    if (grid_size < 1000) throw Error("deviation_profile requires grid_size >= 1000");
    std::mt19937_64 rng(mix_seed(seed, 0x2f));
    const double offset = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const IndexInterval lam{0, N - 1};

    std::vector<double> log_norm(static_cast<size_t>(grid_size));
    std::array<std::vector<double>, 4> entry_logs;
    for (auto& v : entry_logs) v.resize(static_cast<size_t>(grid_size));

    parallel_for(grid_size, [&](long long i) {
        double x = static_cast<double>(i) / static_cast<double>(grid_size) + offset;
        x -= std::floor(x);
        ScaledMatrix2 Mx = monodromy(model, cplx(x, y), freq, E, lam);
        log_norm[static_cast<size_t>(i)] = log_two_norm(Mx);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                entry_logs[static_cast<size_t>(2 * r + c)][static_cast<size_t>(i)] =
                    Mx.scaled_entry(r, c).log_abs();
    });

    DeviationProfile prof;
    prof.N = N;
    prof.y = y;
    prof.H = {0.5, 1.0, 2.0, 4.0, 8.0};
    prof.center = pairwise_sum(log_norm) / static_cast<double>(grid_size);
    const double logN3 = std::pow(std::log(static_cast<double>(N)), 3.0);
    for (double h : prof.H) prof.thresholds.push_back(h * logN3);

    auto exceedance_of = [&](const std::vector<double>& u, double thr) {
        long long cnt = 0;
        for (double v : u) {
            double dev = std::abs(v - prof.center);
            if (!(dev <= thr)) ++cnt;  // non-finite u exceeds every threshold
        }
        return static_cast<double>(cnt) / static_cast<double>(grid_size);
    };

    for (size_t e = 0; e < 4; ++e) {
        for (double thr : prof.thresholds)
            prof.entry_exceedance[e].push_back(exceedance_of(entry_logs[e], thr));
    }
    prof.exceedance = prof.entry_exceedance[0];  // determinant = top-left entry
    for (double v : entry_logs[0]) {
        double dev = std::abs(v - prof.center);
        if (std::isfinite(dev)) prof.max_abs_deviation = std::max(prof.max_abs_deviation, dev);
    }
    return prof;
}

SupProbe sup_probe(const ModelSpec& model, const Frequency& freq, cplx E, long long N,
                   long long grid_size, std::uint64_t seed) {
    if (grid_size < 1000) throw Error("sup_probe requires grid_size >= 1000");
    std::mt19937_64 rng(mix_seed(seed, 0x3f));
    const double offset = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const IndexInterval lam{0, N - 1};
    const double ys[3] = {0.0, 1.0 / static_cast<double>(N), -1.0 / static_cast<double>(N)};

    std::vector<double> sup_per_phase(static_cast<size_t>(grid_size));
    std::vector<double> norm_at_zero(static_cast<size_t>(grid_size));
    parallel_for(grid_size, [&](long long i) {
        double x = static_cast<double>(i) / static_cast<double>(grid_size) + offset;
        x -= std::floor(x);
        double best = -std::numeric_limits<double>::infinity();
        for (double y : ys) {
            double v = log_two_norm(monodromy(model, cplx(x, y), freq, E, lam));
            if (y == 0.0) norm_at_zero[static_cast<size_t>(i)] = v;
            best = std::max(best, v);
        }
        sup_per_phase[static_cast<size_t>(i)] = best;
    });

    const double NLa = pairwise_sum(norm_at_zero) / static_cast<double>(grid_size);
    double sup = -std::numeric_limits<double>::infinity();
    for (double v : sup_per_phase) sup = std::max(sup, v);

    SupProbe probe;
    probe.probe = sup - NLa;
    probe.normalized = probe.probe / std::pow(std::log(static_cast<double>(N)), 3.0);
    return probe;
}

}  // namespace qpjac
