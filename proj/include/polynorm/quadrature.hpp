#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polynorm/common.hpp"

namespace polynorm {

/// Knobs shared by every quadrature in the toolkit. The relative tolerance is
/// the one recorded in reports; max_nodes is a hard cap on integrand
/// evaluations per integral.
struct QuadratureOptions {
    double rel_tol = 1e-10;
    std::size_t max_nodes = std::size_t{1} << 20;
};

namespace detail {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (symmetric half stored).
inline constexpr std::array<double, 8> gl15_x = {
    0.0000000000000000000, 0.2011940939974345223, 0.3941513470775633699,
    0.5709721726085388475, 0.7244177313601700474, 0.8482065834104272162,
    0.9372733924007059043, 0.9879925180204854284};
inline constexpr std::array<double, 8> gl15_w = {
    0.2025782419255612729, 0.1984314853271115765, 0.1861610000155622110,
    0.1662692058169939336, 0.1395706779261543144, 0.1071592204671719351,
    0.0703660474881081247, 0.0307532419961172684};

template <typename F>
double gl15(F&& f, double lo, double hi, std::size_t& nodes_used) {
    const double c = 0.5 * (lo + hi);
    const double hw = 0.5 * (hi - lo);
    double acc = gl15_w[0] * f(c);
    for (int k = 1; k < 8; ++k) {
        acc += gl15_w[k] * (f(c - hw * gl15_x[k]) + f(c + hw * gl15_x[k]));
    }
    nodes_used += 15;
    return acc * hw;
}

template <typename F>
double adaptive_panel(F&& f, double lo, double hi, double whole, double eps,
                      std::size_t& nodes_used, std::size_t max_nodes, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double left = gl15(f, lo, mid, nodes_used);
    const double right = gl15(f, mid, hi, nodes_used);
    const double split = left + right;
    if (std::abs(split - whole) <= eps || depth >= 52 || nodes_used >= max_nodes) {
        return split;
    }
    return adaptive_panel(f, lo, mid, left, 0.5 * eps, nodes_used, max_nodes, depth + 1) +
           adaptive_panel(f, mid, hi, right, 0.5 * eps, nodes_used, max_nodes, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss-Legendre on [lo, hi]. Integrable endpoint singularities
/// (log-type) are fine: nodes never touch the endpoints and the bisection
/// refines locally. A non-finite integrand value raises evaluation_error;
/// place declared singularities at panel endpoints before calling.
template <typename F>
double integrate(F&& f, double lo, double hi, const QuadratureOptions& opt = {}) {
    if (!(lo <= hi)) return -integrate(f, hi, lo, opt);
    if (lo == hi) return 0.0;
    auto checked = [&](double t) {
        const double v = f(t);
        if (!std::isfinite(v)) {
            throw evaluation_error("non-finite integrand at t=" + std::to_string(t));
        }
        return v;
    };
    std::size_t nodes_used = 0;
    const double whole = detail::gl15(checked, lo, hi, nodes_used);
    // Error budget: relative to the integral scale, with the L1 estimate as a
    // floor so that cancelling integrands (value near zero) still terminate.
    double l1 = 0.0;
    {
        std::size_t scratch = 0;
        l1 = detail::gl15([&](double t) { return std::abs(checked(t)); }, lo, hi, scratch);
    }
    const double scale = std::max({std::abs(whole), l1, 1e-300});
    const double eps = opt.rel_tol * scale;
    return detail::adaptive_panel(checked, lo, hi, whole, eps, nodes_used, opt.max_nodes, 0);
}

/// Integrate over a union of subintervals, e.g. a domain with interior
/// breakpoints at declared singularities or region boundaries.
template <typename F>
double integrate_pieces(F&& f, const std::vector<std::pair<double, double>>& pieces,
                        const QuadratureOptions& opt = {}) {
    double acc = 0.0;
    for (const auto& [lo, hi] : pieces) acc += integrate(f, lo, hi, opt);
    return acc;
}

}  // namespace polynorm
