#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "polynorm/common.hpp"
#include "polynorm/geometry.hpp"
#include "polynorm/polynomials.hpp"
#include "polynorm/quadrature.hpp"

namespace polynorm {

/// Unit equilibrium measure of a set: the uniform angular measure on a
/// circle, the arcsine distribution on a segment, or an empirical measure of
/// n equal point masses for general sets.
struct EquilibriumMeasure {
    enum class Kind { disk_uniform, segment_arcsine, empirical };

    Kind kind;
    // disk_uniform
    cplx center{0.0, 0.0};
    double radius = 0.0;
    // segment_arcsine on T([-a, a]),  T(x) = map_linear * x + map_shift
    double a = 0.0;
    cplx map_linear{1.0, 0.0};
    cplx map_shift{0.0, 0.0};
    // empirical
    std::vector<cplx> atoms;

    static EquilibriumMeasure disk_uniform(cplx center, double radius) {
        EquilibriumMeasure m;
        m.kind = Kind::disk_uniform;
        m.center = center;
        m.radius = radius;
        return m;
    }
    static EquilibriumMeasure segment_arcsine(double a, cplx linear = {1.0, 0.0},
                                              cplx shift = {0.0, 0.0}) {
        EquilibriumMeasure m;
        m.kind = Kind::segment_arcsine;
        m.a = a;
        m.map_linear = linear;
        m.map_shift = shift;
        return m;
    }
    static EquilibriumMeasure empirical(std::vector<cplx> atoms) {
        EquilibriumMeasure m;
        m.kind = Kind::empirical;
        m.atoms = std::move(atoms);
        return m;
    }
};

/// A Fekete-type point configuration with its capacity estimate.
struct FeketeResult {
    enum class Method { leja, leja_exchange };

    std::vector<cplx> points;
    int n = 0;
    double capacity_estimate = 0.0;
    Method method = Method::leja;
    std::vector<std::size_t> sample_indices;  // positions within set.boundary()
};

inline const char* to_string(FeketeResult::Method m) {
    return m == FeketeResult::Method::leja ? "leja" : "leja+exchange";
}

/// Exact logarithmic capacity where a closed form exists: r for a disk of
/// radius r, a/2 for [-a, a]; dilations scale it. Absent otherwise.
inline std::optional<double> capacity_exact(const SetDescriptor& d) {
    switch (d.kind()) {
        case SetDescriptor::Kind::disk:
            return d.as_disk().r * d.map_scale();
        case SetDescriptor::Kind::segment:
            return d.as_segment().a * d.map_scale() / 2.0;
        default:
            return std::nullopt;
    }
}

namespace detail {

inline double refresh_capacity(FeketeResult& f, const CompactSet& set) {
    f.capacity_estimate =
        std::exp(log_sup_norm(MonicPoly(f.points), set) / static_cast<double>(f.n));
    return f.capacity_estimate;
}

}  // namespace detail

/// Greedy Leja points over the boundary samples. The first point maximizes
/// the farthest-distance function; each next point maximizes the product of
/// distances to the points already chosen. Ties break to the lowest sample
/// index, so the result is deterministic for a fixed set and h.
inline FeketeResult leja_points(const CompactSet& set, int n) {
    const auto& samples = set.boundary();
    if (n < 2) throw error("leja_points requires n >= 2");
    if (samples.size() < static_cast<std::size_t>(n)) {
        throw insufficient_samples_error("boundary has fewer samples than requested points");
    }

    FeketeResult out;
    out.n = n;
    out.method = FeketeResult::Method::leja;

    std::size_t first = 0;
    double best = -inf;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double d = farthest_distance(set, samples[i]);
        if (d > best) {
            best = d;
            first = i;
        }
    }
    out.sample_indices.push_back(first);

    std::vector<double> score(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        score[i] = std::log(std::abs(samples[i] - samples[first]));
    }
    for (int k = 1; k < n; ++k) {
        std::size_t pick = 0;
        double top = -inf;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (score[i] > top) {
                top = score[i];
                pick = i;
            }
        }
        out.sample_indices.push_back(pick);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            score[i] += std::log(std::abs(samples[i] - samples[pick]));
        }
    }

    for (std::size_t i : out.sample_indices) out.points.push_back(samples[i]);
    detail::refresh_capacity(out, set);
    return out;
}

/// Single-point exchange refinement: repeatedly replace one point by the
/// boundary sample that most increases sum_{i<j} log |a_i - a_j|, until a
/// local optimum or max_rounds. The objective never decreases.
inline FeketeResult fekete_exchange(const CompactSet& set, const FeketeResult& start,
                                    int max_rounds = 40) {
    const auto& samples = set.boundary();
    FeketeResult out = start;
    auto& idx = out.sample_indices;
    const std::size_t n = idx.size();
    const std::size_t ns = samples.size();

    std::vector<double> sigma(ns);
    for (int round = 0; round < max_rounds; ++round) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        for (std::size_t j : idx) {
            for (std::size_t i = 0; i < ns; ++i) sigma[i] += std::log(std::abs(samples[i] - samples[j]));
        }
        bool improved = false;
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t i_old = idx[j];
            double cur = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) cur += std::log(std::abs(samples[i_old] - samples[idx[k]]));
            }
            std::size_t pick = i_old;
            double top = cur;
            const double tol = 1e-12 * (1.0 + std::abs(cur));
            for (std::size_t s = 0; s < ns; ++s) {
                if (s == i_old) continue;
                const double gain = sigma[s] - std::log(std::abs(samples[s] - samples[i_old]));
                if (gain > top + tol) {
                    top = gain;
                    pick = s;
                }
            }
            if (pick != i_old) {
                for (std::size_t i = 0; i < ns; ++i) {
                    sigma[i] += std::log(std::abs(samples[i] - samples[pick])) -
                                std::log(std::abs(samples[i] - samples[i_old]));
                }
                idx[j] = pick;
                improved = true;
            }
        }
        if (!improved) break;
    }

    out.points.clear();
    for (std::size_t i : idx) out.points.push_back(samples[i]);
    out.method = FeketeResult::Method::leja_exchange;
    detail::refresh_capacity(out, set);
    return out;
}

/// ||F_n||_E^{1/n} for the (exchange-refined) Leja configuration; converges
/// to cap(E) from above as n grows.
inline double capacity_estimate(const CompactSet& set, int n, bool refine = true) {
    FeketeResult f = leja_points(set, n);
    if (refine) f = fekete_exchange(set, f);
    return f.capacity_estimate;
}

/// Analytic measure for disks and segments (transforms included); empirical
/// Leja counting measure otherwise.
inline EquilibriumMeasure equilibrium_measure(const CompactSet& set, int n) {
    const SetDescriptor& d = set.descriptor();
    switch (d.kind()) {
        case SetDescriptor::Kind::disk: {
            const Disk& dd = d.as_disk();
            return EquilibriumMeasure::disk_uniform(d.map_point(dd.center),
                                                    dd.r * d.map_scale());
        }
        case SetDescriptor::Kind::segment: {
            const Transform t = d.transform().value_or(Transform{});
            return EquilibriumMeasure::segment_arcsine(d.as_segment().a, t.linear(),
                                                       t.translate);
        }
        default:
            return EquilibriumMeasure::empirical(leja_points(set, n).points);
    }
}

/// Integral of f against the measure. Endpoint singularities of the arcsine
/// density are removed by the t = a sin(theta) substitution; a declared
/// log-type singularity of f becomes a quadrature breakpoint (analytic
/// measures) or a skipped atom (empirical). Empirical integration is exact
/// for its atoms. A non-finite integrand anywhere else raises
/// evaluation_error.
template <typename F>
double measure_integral(const EquilibriumMeasure& mu, F&& f,
                        std::optional<cplx> singular_at = std::nullopt,
                        const QuadratureOptions& opt = {}) {
    switch (mu.kind) {
        case EquilibriumMeasure::Kind::disk_uniform: {
            auto g = [&](double theta) { return f(mu.center + std::polar(mu.radius, theta)); };
            double t0 = 0.0;
            if (singular_at && std::abs(*singular_at - mu.center) > 0.0) {
                t0 = std::arg(*singular_at - mu.center);
            }
            const double v = integrate(g, t0, t0 + pi, opt) + integrate(g, t0 + pi, t0 + 2.0 * pi, opt);
            return v / (2.0 * pi);
        }
        case EquilibriumMeasure::Kind::segment_arcsine: {
            auto g = [&](double theta) {
                return f(mu.map_linear * (mu.a * std::sin(theta)) + mu.map_shift);
            };
            std::vector<std::pair<double, double>> pieces;
            if (singular_at) {
                const cplx pulled = (*singular_at - mu.map_shift) / mu.map_linear;
                const double x = std::clamp(pulled.real() / mu.a, -1.0, 1.0);
                const double ts = std::asin(x);
                pieces = {{-pi / 2.0, ts}, {ts, pi / 2.0}};
            } else {
                pieces = {{-pi / 2.0, pi / 2.0}};
            }
            return integrate_pieces(g, pieces, opt) / pi;
        }
        case EquilibriumMeasure::Kind::empirical: {
            double acc = 0.0;
            std::size_t used = 0;
            for (cplx atom : mu.atoms) {
                if (singular_at && atom == *singular_at) continue;
                const double v = f(atom);
                if (!std::isfinite(v)) {
                    throw evaluation_error("non-finite integrand at an empirical atom");
                }
                acc += v;
                ++used;
            }
            (void)used;
            return acc / static_cast<double>(mu.atoms.size());
        }
    }
    return 0.0;
}

namespace detail {

struct MeasureParam {
    double t0, t1;     // parameter range
    double weight;     // density in the parameter (constant)
    bool wraps;        // disk angle wraps
};

inline MeasureParam measure_param(const EquilibriumMeasure& mu) {
    if (mu.kind == EquilibriumMeasure::Kind::disk_uniform) {
        return {0.0, 2.0 * pi, 1.0 / (2.0 * pi), true};
    }
    return {-pi / 2.0, pi / 2.0, 1.0 / pi, false};
}

inline cplx measure_point(const EquilibriumMeasure& mu, double t) {
    if (mu.kind == EquilibriumMeasure::Kind::disk_uniform) {
        return mu.center + std::polar(mu.radius, t);
    }
    return mu.map_linear * (mu.a * std::sin(t)) + mu.map_shift;
}

}  // namespace detail

/// Integral of log |z - u| over the part of the measure with |z - u| >= 1
/// (outside = true) or <= 1 (outside = false). The region boundary is found
/// by solving |z(t) - u| = 1 along the parametrization; for the inside
/// region the point z = u is a declared singularity and becomes a
/// breakpoint. This is the engine behind the factor constant.
inline double measure_log_integral_region(const EquilibriumMeasure& mu, cplx u,
                                          bool outside,
                                          const QuadratureOptions& opt = {}) {
    if (mu.kind == EquilibriumMeasure::Kind::empirical) {
        double acc = 0.0;
        for (cplx atom : mu.atoms) {
            const double dist = std::abs(atom - u);
            if (outside ? dist >= 1.0 : dist <= 1.0) {
                if (!outside && atom == u) continue;  // singular atom
                acc += std::log(dist);
            }
        }
        return acc / static_cast<double>(mu.atoms.size());
    }

    const auto par = detail::measure_param(mu);
    auto psi = [&](double t) { return std::abs(detail::measure_point(mu, t) - u) - 1.0; };

    std::vector<double> breaks{par.t0, par.t1};
    const int grid = 4096;
    double prev_t = par.t0;
    double prev_v = psi(prev_t);
    for (int k = 1; k <= grid; ++k) {
        const double t = par.t0 + (par.t1 - par.t0) * static_cast<double>(k) / grid;
        const double v = psi(t);
        if ((prev_v < 0.0) != (v < 0.0)) {
            double lo = prev_t, hi = t, flo = prev_v;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = psi(mid);
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            breaks.push_back(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_v = v;
    }
    if (!outside) {
        // z = u is a log singularity inside the region; split there.
        double ts;
        if (mu.kind == EquilibriumMeasure::Kind::disk_uniform) {
            ts = std::arg(u - mu.center);
            if (ts < par.t0) ts += 2.0 * pi;
        } else {
            const cplx pulled = (u - mu.map_shift) / mu.map_linear;
            ts = std::asin(std::clamp(pulled.real() / mu.a, -1.0, 1.0));
        }
        if (ts > par.t0 && ts < par.t1) breaks.push_back(ts);
    }
    std::sort(breaks.begin(), breaks.end());

    auto g = [&](double t) { return std::log(std::abs(detail::measure_point(mu, t) - u)); };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i], hi = breaks[i + 1];
        if (hi - lo < 1e-15) continue;
        const double mid_sign = psi(0.5 * (lo + hi));
        if (outside ? mid_sign >= 0.0 : mid_sign <= 0.0) {
            acc += integrate(g, lo, hi, opt);
        }
    }
    return acc * par.weight;
}

/// Green function of the unbounded complement component with pole at
/// infinity: log(1/cap) + int log |z - t| dmu(t). Exact capacity is used
/// where available; the Fekete estimate otherwise.
inline double green_function(const CompactSet& set, cplx z, int n,
                             const QuadratureOptions& opt = {}) {
    const auto cap = capacity_exact(set.descriptor());
    const double c = cap ? *cap : capacity_estimate(set, n);
    const EquilibriumMeasure mu = equilibrium_measure(set, n);
    const double integral = measure_integral(
        mu, [&](cplx t) { return std::log(std::abs(z - t)); }, z, opt);
    return std::log(1.0 / c) + integral;
}

}  // namespace polynorm
