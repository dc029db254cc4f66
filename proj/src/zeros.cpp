#include "qpjac/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpjac/parallel.hpp"
#include "qpjac/transfer.hpp"

namespace qpjac {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kContourFloor = -29.933606208922594;  // log(1e-13)

struct Node {
    double theta;
    cplx mantissa;   // only arg is consumed
    double log_abs;
};

// One tracking attempt at a fixed radius.  Returns false when the contour
// grazes a zero (exact zero node or dynamic range beyond 1e13).
bool track_contour(const AnalyticFn& f, cplx center, double radius, long long max_nodes,
                   WindingResult& out) {
    auto make_node = [&](double theta) {
        cplx z = center + std::polar(radius, theta);
        ScaledComplex v = f(z);
        return Node{theta, v.mantissa(), v.log_abs()};
    };

    std::vector<Node> nodes;
    const int initial = 64;
    nodes.reserve(initial * 2);
    for (int i = 0; i < initial; ++i)
        nodes.push_back(make_node(2.0 * kPi * i / initial));

    auto arg_step = [](const Node& a, const Node& b) {
        return std::arg(b.mantissa * std::conj(a.mantissa));
    };

    for (;;) {
        bool split = false;
        std::vector<Node> refined;
        refined.reserve(nodes.size() * 2);
        for (size_t i = 0; i < nodes.size(); ++i) {
            const Node& a = nodes[i];
            const Node& b = nodes[(i + 1) % nodes.size()];
            refined.push_back(a);
            if (a.mantissa == cplx(0) || b.mantissa == cplx(0)) return false;
            if (std::abs(arg_step(a, b)) >= kPi / 2.0) {
                double tb = i + 1 < nodes.size() ? b.theta : b.theta + 2.0 * kPi;
                refined.push_back(make_node(0.5 * (a.theta + tb)));
                split = true;
            }
        }
        nodes.swap(refined);
        if (static_cast<long long>(nodes.size()) > max_nodes)
            throw NoConvergence("winding subdivision exceeded the node cap");
        if (!split) break;
    }

    double total = 0.0;
    double lmin = std::numeric_limits<double>::infinity();
    double lmax = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < nodes.size(); ++i) {
        total += arg_step(nodes[i], nodes[(i + 1) % nodes.size()]);
        lmin = std::min(lmin, nodes[i].log_abs);
        lmax = std::max(lmax, nodes[i].log_abs);
    }
    if (lmin < lmax + kContourFloor) return false;

    out.count = std::llround(total / (2.0 * kPi));
    out.log_min_modulus = lmin;
    out.log_max_modulus = lmax;
    out.nodes_used = static_cast<long long>(nodes.size());
    out.radius_used = radius;
    return true;
}

}  // namespace

WindingResult winding_count(const AnalyticFn& f, Disk disk, long long max_nodes) {
    if (disk.radius <= 0.0) throw Error("winding_count requires a positive radius");
    WindingResult out;
    for (int attempt = 0; attempt <= 8; ++attempt) {
        double bump = 0.01 * ((attempt + 1) / 2);
        double radius = disk.radius * (attempt == 0 ? 1.0
                                       : attempt % 2 ? 1.0 + bump
                                                     : 1.0 - bump);
        if (track_contour(f, disk.center, radius, max_nodes, out)) return out;
    }
    throw ContourThroughZero();
}

JensenResult jensen_average(const RealFn& u, cplx z0, double r, double epsilon,
                            int spacing_divisor) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("epsilon must be in (0,1)");
    if (spacing_divisor < 2) throw Error("spacing_divisor must be >= 2");
    if (r <= 0.0) throw Error("jensen_average requires r > 0");

    const double h = epsilon * r / spacing_divisor;
    const double cover = (1.0 + epsilon) * r * (1.0 + 1e-12);
    const long long range = static_cast<long long>(std::ceil(cover / h)) + 1;
    const long long side = 2 * range + 1;
    const double ox = h / std::sqrt(2.0);
    const double oy = h / std::sqrt(3.0);

    auto node = [&](long long i, long long j) {
        return z0 + cplx(static_cast<double>(i) * h + ox, static_cast<double>(j) * h + oy);
    };
    auto idx = [&](long long i, long long j) {
        return static_cast<size_t>((i + range) * side + (j + range));
    };

    // Shared sampling pass: one evaluation per grid node inside the cover.
    std::vector<double> U(static_cast<size_t>(side * side),
                          std::numeric_limits<double>::quiet_NaN());
    std::vector<char> used(static_cast<size_t>(side * side), 0);
    parallel_for(side, [&](long long row) {
        long long i = row - range;
        for (long long j = -range; j <= range; ++j) {
            cplx z = node(i, j);
            if (std::abs(z - z0) <= cover) {
                U[idx(i, j)] = u(z);
                used[idx(i, j)] = 1;
            }
        }
    });

    // The stencil lives on integer offsets, so it is the same for every
    // outer node and centrally symmetric.
    std::vector<std::pair<long long, long long>> stencil;
    const long long sd = spacing_divisor;
    for (long long di = -sd; di <= sd; ++di)
        for (long long dj = -sd; dj <= sd; ++dj)
            if (di * di + dj * dj <= sd * sd) stencil.emplace_back(di, dj);
    const double n_inner = static_cast<double>(stencil.size());

    double acc = 0.0;
    long long outer = 0;
    bool singular = false;
    for (long long i = -range; i <= range && !singular; ++i) {
        for (long long j = -range; j <= range; ++j) {
            if (std::abs(node(i, j) - z0) > r) continue;
            double center_val = U[idx(i, j)];
            if (!std::isfinite(center_val)) { singular = true; break; }
            double inner = 0.0;
            for (const auto& [di, dj] : stencil) inner += U[idx(i + di, j + dj)];
            inner /= n_inner;
            if (!std::isfinite(inner)) { singular = true; break; }
            acc += inner - center_val;
            ++outer;
        }
    }
    if (singular) throw SingularSample();
    if (outer == 0) throw Error("jensen grid too coarse: no outer nodes");

    JensenResult res;
    res.value = (4.0 / (epsilon * epsilon)) * acc / static_cast<double>(outer);
    res.epsilon = epsilon;
    res.grid_spacing = h;
    res.samples_outer = outer;
    return res;
}

WindingResult zero_count_disk(const ModelSpec& model, const Frequency& freq, cplx E,
                              IndexInterval lam, double x0, double r) {
    if (r > 1.0) throw Error("zero_count_disk expects a local disk, r <= 1");
    AnalyticFn f = [&model, &freq, E, lam](cplx z) {
        return dirichlet_det(model, z, freq, E, lam);
    };
    return winding_count(f, Disk{cplx(x0, 0.0), r});
}

std::array<AnalyticFn, 4> window_entry_functions(const ModelSpec& model,
                                                 const Frequency& freq, cplx E,
                                                 long long s, long long k) {
    if (k < 1) throw Error("window length must be >= 1");
    const double omega = freq.omega;
    auto f = [&model, &freq, E](long long lo, long long hi, cplx z) {
        return dirichlet_det(model, z, freq, E, lo, hi);
    };
    AnalyticFn e11 = [=, &model, &freq](cplx z) { return f(s, s + k - 1, z); };
    AnalyticFn e12 = [=, &model, &freq](cplx z) {
        cplx bt = model.b_tilde.eval(z + static_cast<double>(s) * omega);
        return ScaledComplex(-bt) * f(s + 1, s + k - 1, z);
    };
    AnalyticFn e21 = [=, &model, &freq](cplx z) {
        cplx bb = model.b.eval(z + static_cast<double>(s + k) * omega);
        return ScaledComplex(bb) * f(s, s + k - 2, z);
    };
    AnalyticFn e22 = [=, &model, &freq](cplx z) {
        cplx bt = model.b_tilde.eval(z + static_cast<double>(s) * omega);
        cplx bb = model.b.eval(z + static_cast<double>(s + k) * omega);
        return ScaledComplex(-bt) * ScaledComplex(bb) * f(s + 1, s + k - 2, z);
    };
    return {e11, e12, e21, e22};
}

namespace {

bool shift_is_adjusted(const ModelSpec& model, const Frequency& freq, cplx E, double x0,
                       double r0, long long s, const std::vector<long long>& k_set,
                       long long m_max) {
    const Disk disk{cplx(x0, 0.0), r0};
    for (long long k : k_set) {
        for (long long m = -m_max; m <= m_max; ++m) {
            auto entries = window_entry_functions(model, freq, E, s + m, k);
            for (int e = 0; e < 4; ++e) {
                if (e == 3 && k == 1) continue;  // identically zero entry is admissible
                try {
                    if (winding_count(entries[static_cast<size_t>(e)], disk).count > 0)
                        return false;
                } catch (const ContourThroughZero&) {
                    return false;  // zero pinned to the boundary: not zero-free
                }
            }
        }
    }
    return true;
}

}  // namespace

long long find_adjusted(const ModelSpec& model, const Frequency& freq, cplx E, double x0,
                        double r0, long long l, long long s0, long long search_radius,
                        const std::vector<long long>& k_set, long long m_max) {
    if (!(r0 > 0.0) || r0 >= 1.0 / (8.0 * static_cast<double>(l)))
        throw Error("find_adjusted requires 0 < r0 < 1/(8l)");
    if (m_max > 100) throw Error("find_adjusted requires m_max <= 100");
    for (long long k : k_set)
        if (k < l || k > 100 * l) throw Error("k_set must lie in [l, 100l]");

    for (long long d = 0; d <= search_radius; ++d) {
        if (shift_is_adjusted(model, freq, E, x0, r0, s0 + d, k_set, m_max)) return s0 + d;
        if (d > 0 && shift_is_adjusted(model, freq, E, x0, r0, s0 - d, k_set, m_max))
            return s0 - d;
    }
    throw NoAdjustedInteger();
}

double multiscale_jensen_residual(const ModelSpec& model, const Frequency& freq, cplx E,
                                  const std::vector<IndexInterval>& partition, double x0,
                                  double r, double epsilon, int spacing_divisor) {
    if (partition.empty()) throw Error("partition must be nonempty");
    std::vector<IndexInterval> parts = partition;
    std::sort(parts.begin(), parts.end(),
              [](const IndexInterval& a, const IndexInterval& b) { return a.lo < b.lo; });
    for (size_t i = 0; i + 1 < parts.size(); ++i)
        if (parts[i + 1].lo != parts[i].hi + 1)
            throw Error("partition intervals must be consecutive and disjoint");
    IndexInterval whole{parts.front().lo, parts.back().hi};

    auto J_of = [&](IndexInterval lam) {
        RealFn u = [&model, &freq, E, lam](cplx z) {
            return dirichlet_det(model, z, freq, E, lam).log_abs();
        };
        return jensen_average(u, cplx(x0, 0.0), r, epsilon, spacing_divisor).value;
    };

    double total = J_of(whole);
    for (const IndexInterval& part : parts) total -= J_of(part);
    return total;
}

}  // namespace qpjac
