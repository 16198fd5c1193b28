#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "polynorm/common.hpp"
#include "polynorm/geometry.hpp"
#include "polynorm/parallel.hpp"
#include "polynorm/potential.hpp"
#include "polynorm/quadrature.hpp"

namespace polynorm {

/// The sharp product constant M_E for disks and segments.
///
/// Disks give exactly 2 for every radius; the constant is invariant under
/// rigid motions and dilations, so segments reduce to [-1, 1]:
///   M = 2 exp((2/pi) int_0^{pi/2} log(1 + sin t) dt) ~= 3.2099123.
inline double m_exact(const SetDescriptor& d, const QuadratureOptions& opt = {}) {
    switch (d.kind()) {
        case SetDescriptor::Kind::disk:
            return 2.0;
        case SetDescriptor::Kind::segment: {
            const EquilibriumMeasure mu = EquilibriumMeasure::segment_arcsine(1.0);
            const double i = measure_integral(
                mu, [](cplx z) { return std::log(1.0 + std::abs(z.real())); }, std::nullopt,
                opt);
            return 2.0 * std::exp(i);
        }
        default:
            throw unsupported_descriptor_error("m_exact supports disk and segment only");
    }
}

/// M_E by the defining integral: exp(int log d_E dmu_E) / cap(E), using the
/// analytic measure and exact capacity where available and the Fekete
/// machinery otherwise.
inline double m_numeric(const CompactSet& set, int n, const QuadratureOptions& opt = {}) {
    const EquilibriumMeasure mu = equilibrium_measure(set, n);
    const double i = measure_integral(
        mu, [&](cplx z) { return std::log(farthest_distance(set, z)); }, std::nullopt, opt);
    const auto cap = capacity_exact(set.descriptor());
    const double c = cap ? *cap : capacity_estimate(set, n);
    return std::exp(i) / c;
}

/// The universal continuum bound diam(E)/cap(E) (always <= 4).
inline double m_upper_bound(const CompactSet& set, int n) {
    if (set.descriptor().kind() == SetDescriptor::Kind::arc_union) {
        throw unsupported_descriptor_error("m_upper_bound requires a continuum descriptor");
    }
    const auto cap = capacity_exact(set.descriptor());
    const double c = cap ? *cap : capacity_estimate(set, n);
    return diameter(set) / c;
}

/// The sharp factor constant C_E in closed form.
///
/// Disk of radius r:   1/r for r <= 1/2, else
///   (1/r) exp((1/pi) int_0^{pi - 2 asin(1/(2r))} log(2 r cos(x/2)) dx).
/// Segment [-a, a]:     2/a for a <= 1/2, else
///   (2/a) exp(int_{1-a}^{a} log(t+a) / (pi sqrt(a^2-t^2)) dt),
/// evaluated after the t = a sin(theta) substitution.
inline double c_exact(const SetDescriptor& d, const QuadratureOptions& opt = {}) {
    switch (d.kind()) {
        case SetDescriptor::Kind::disk: {
            const double r = d.as_disk().r * d.map_scale();
            if (r <= 0.5) return 1.0 / r;
            const double upper = pi - 2.0 * std::asin(1.0 / (2.0 * r));
            const double i =
                integrate([&](double x) { return std::log(2.0 * r * std::cos(0.5 * x)); }, 0.0,
                          upper, opt);
            return std::exp(i / pi) / r;
        }
        case SetDescriptor::Kind::segment: {
            const double a = d.as_segment().a * d.map_scale();
            if (a <= 0.5) return 2.0 / a;
            const double lower = std::asin((1.0 - a) / a);
            const double i = integrate(
                [&](double t) { return std::log(a * (1.0 + std::sin(t))); }, lower, pi / 2.0,
                opt);
            return 2.0 * std::exp(i / pi) / a;
        }
        default:
            throw unsupported_descriptor_error("c_exact supports disk and segment only");
    }
}

struct FactorConstant {
    double c = 0.0;
    cplx u_star{0.0, 0.0};
};

/// C_E by the defining max over boundary points u of
/// exp(int_{|z-u|>=1} log |z-u| dmu_E) / cap(E). The sweep runs over the
/// boundary samples (data-parallel, ties to the lowest index) followed by a
/// golden-section refinement pass along the boundary parameter.
inline FactorConstant c_numeric(const CompactSet& set, int n,
                                const QuadratureOptions& opt = {}) {
    const EquilibriumMeasure mu = equilibrium_measure(set, n);
    const auto cap = capacity_exact(set.descriptor());
    const double c = cap ? *cap : capacity_estimate(set, n);

    const auto& samples = set.boundary();
    std::vector<double> vals(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
        vals[i] = measure_log_integral_region(mu, samples[i], /*outside=*/true, opt);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < vals.size(); ++i) {
        if (vals[i] > vals[best]) best = i;
    }

    const auto bracket = set.bracket_of(best);
    double top = vals[best];
    cplx u_star = samples[best];
    if (bracket.hi > bracket.lo) {
        auto [t, v] = golden_max(
            [&](double s) {
                return measure_log_integral_region(mu, set.point_at(bracket.curve, s),
                                                   /*outside=*/true, opt);
            },
            bracket.lo, bracket.hi);
        if (v > top) {
            top = v;
            u_star = set.point_at(bracket.curve, t);
        }
    }
    return {std::exp(top) / c, u_star};
}

/// The regular-set form of the factor constant at a given boundary point:
/// exp(-int_{|z-u|<=1} log |z-u| dmu_E). Equals C_E at the maximizing u when
/// E is regular; kept as an independent route for cross-checks.
inline double c_regular_at(const EquilibriumMeasure& mu, cplx u,
                           const QuadratureOptions& opt = {}) {
    return std::exp(-measure_log_integral_region(mu, u, /*outside=*/false, opt));
}

/// log K_{l,n} = (n-1) log 2 + sum_{k<=l} log(1+cos((2k-1)pi/2n))
///                          + sum_{k<=n-l} log(1+cos((2k-1)pi/2n)).
inline double log_kneser_constant(int l, int n) {
    if (l < 1 || l > n) throw error("kneser constant requires 1 <= l <= n");
    auto tail = [&](int m) {
        double acc = 0.0;
        for (int k = 1; k <= m; ++k) {
            acc += std::log1p(std::cos((2.0 * k - 1.0) * pi / (2.0 * n)));
        }
        return acc;
    };
    return (n - 1) * std::log(2.0) + tail(l) + tail(n - l);
}

inline double kneser_constant(int l, int n) { return std::exp(log_kneser_constant(l, n)); }

/// log of the multifactor constant 2^{n-1} prod_{k<=n/2} (1+cos((2k-1)pi/2n))^2,
/// whose n-th root tends to the segment constant 3.20991...
inline double log_borwein_multifactor_constant(int n) {
    if (n < 1) throw error("multifactor constant requires n >= 1");
    double acc = (n - 1) * std::log(2.0);
    for (int k = 1; k <= n / 2; ++k) {
        acc += 2.0 * std::log1p(std::cos((2.0 * k - 1.0) * pi / (2.0 * n)));
    }
    return acc;
}

inline double borwein_multifactor_constant(int n) {
    return std::exp(log_borwein_multifactor_constant(n));
}

/// C_m = exp((m/pi) int_0^{pi/m} log(2 cos(t/2)) dt); increases from 1 to 2.
inline double boyd_cm(int m, const QuadratureOptions& opt = {}) {
    if (m < 1) throw error("boyd_cm requires m >= 1");
    const double i =
        integrate([](double t) { return std::log(2.0 * std::cos(0.5 * t)); }, 0.0, pi / m, opt);
    return std::exp(static_cast<double>(m) * i / pi);
}

/// beta = exp((1/pi) int_0^{2pi/3} log(2 cos(t/2)) dt), the sharp base for a
/// monic factor on the unit disk.
inline double boyd_beta(const QuadratureOptions& opt = {}) {
    const double i = integrate([](double t) { return std::log(2.0 * std::cos(0.5 * t)); }, 0.0,
                               2.0 * pi / 3.0, opt);
    return std::exp(i / pi);
}

/// log of the endpoint-bound multiplier a^{m-n} 2^{n-1}
/// prod_{k<=m} (1+cos((2k-1)pi/2n)) for |q(-a)| <= multiplier * ||p||.
inline double log_borwein_endpoint_bound(double a, int m, int n) {
    if (m < 1 || m > n || !(a > 0.0)) {
        throw error("endpoint bound requires 1 <= m <= n and a > 0");
    }
    double acc = (m - n) * std::log(a) + (n - 1) * std::log(2.0);
    for (int k = 1; k <= m; ++k) {
        acc += std::log1p(std::cos((2.0 * k - 1.0) * pi / (2.0 * n)));
    }
    return acc;
}

inline double borwein_endpoint_bound(double a, int m, int n) {
    return std::exp(log_borwein_endpoint_bound(a, m, n));
}

/// Bound for the smallest factor of a degree-n monic polynomial:
/// ||r||_E <= M^{n/2} ||p||_E^{1/2}.
inline double smallest_factor_bound(double m_const, int n, double norm_p) {
    if (!(m_const >= 1.0) || !(norm_p > 0.0)) {
        throw error("smallest_factor_bound requires M >= 1 and ||p|| > 0");
    }
    return std::pow(m_const, 0.5 * n) * std::sqrt(norm_p);
}

/// One computed number with its provenance, as serialized into reports.
struct Provenance {
    double value = 0.0;
    std::string method;
    int n = 0;
    double h = 0.0;
    double tolerance = 0.0;
};

/// Everything the `constants` front end reports for one set.
struct ConstantsReport {
    SetDescriptor set = SetDescriptor::disk({0.0, 0.0}, 1.0);
    Provenance capacity;
    Provenance m;
    Provenance c;
    Provenance m_upper;
    cplx u_star{0.0, 0.0};
    std::vector<std::string> notes;
};

inline ConstantsReport constants_report(const SetDescriptor& d, int n, double h,
                                        const QuadratureOptions& opt = {}) {
    ConstantsReport rep;
    rep.set = d;
    const CompactSet set = build_set(d, h);
    const bool analytic = d.kind() == SetDescriptor::Kind::disk ||
                          d.kind() == SetDescriptor::Kind::segment;

    if (const auto cap = capacity_exact(d)) {
        rep.capacity = {*cap, "exact", 0, h, 0.0};
    } else {
        rep.capacity = {capacity_estimate(set, n), "fekete", n, h, opt.rel_tol};
    }

    if (analytic) {
        rep.m = {m_exact(d, opt), "closed-form quadrature", 0, h, opt.rel_tol};
        rep.c = {c_exact(d, opt), "closed-form quadrature", 0, h, opt.rel_tol};
    } else {
        rep.m = {m_numeric(set, n, opt), "fekete-empirical", n, h, opt.rel_tol};
        rep.c = {0.0, "fekete-empirical", n, h, opt.rel_tol};
    }
    const FactorConstant fc = c_numeric(set, n, opt);
    if (!analytic) rep.c.value = fc.c;
    rep.u_star = fc.u_star;
    if (d.kind() != SetDescriptor::Kind::arc_union) {
        rep.m_upper = {m_upper_bound(set, n), rep.capacity.method, n, h, opt.rel_tol};
    }
    rep.notes.push_back("capacity provenance: " + rep.capacity.method);
    rep.notes.push_back("u_star from the boundary-sample sweep at h=" + std::to_string(h));
    return rep;
}

}  // namespace polynorm
