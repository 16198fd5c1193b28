#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "polynorm/common.hpp"
#include "polynorm/geometry.hpp"
#include "polynorm/parallel.hpp"

namespace polynorm {

/// A monic polynomial stored by its root multiset. An empty multiset is the
/// constant 1 (the empty product), so that trivial factor splits stay
/// well-defined in norm ratios. Coefficients are never formed; |p(z)| is
/// evaluated in log-space, which stays stable into the hundreds of degrees.
class MonicPoly {
public:
    MonicPoly() = default;  // the constant 1
    explicit MonicPoly(std::vector<cplx> roots) : roots_(std::move(roots)) {}

    static MonicPoly one() { return MonicPoly{}; }

    std::size_t degree() const { return roots_.size(); }
    const std::vector<cplx>& roots() const { return roots_; }

    /// log |p(z)|; -inf exactly at a root.
    double log_abs_at(cplx z) const {
        double acc = 0.0;
        for (cplx r : roots_) acc += std::log(std::abs(z - r));
        return acc;
    }

    /// Product-form evaluation. Fine for modest degrees; large degrees on
    /// large sets should go through log_abs_at.
    cplx eval(cplx z) const {
        cplx acc{1.0, 0.0};
        for (cplx r : roots_) acc *= z - r;
        return acc;
    }

private:
    std::vector<cplx> roots_;
};

/// p = p_1 * ... * p_m viewed as its list of monic factors.
struct Factorization {
    std::vector<MonicPoly> factors;
};

inline MonicPoly product(const Factorization& f) {
    std::vector<cplx> roots;
    for (const MonicPoly& p : f.factors) {
        roots.insert(roots.end(), p.roots().begin(), p.roots().end());
    }
    return MonicPoly(std::move(roots));
}

/// Monic Chebyshev polynomial of degree n on [-a, a]: roots at
/// a cos((2k-1) pi / (2n)).
inline MonicPoly chebyshev_monic(int n, double a) {
    if (n < 1) throw error("chebyshev_monic requires n >= 1");
    std::vector<cplx> roots;
    roots.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        roots.emplace_back(a * std::cos((2.0 * k - 1.0) * pi / (2.0 * n)), 0.0);
    }
    return MonicPoly(std::move(roots));
}

/// Split p into (q, r): q keeps the roots satisfying the predicate, r the
/// rest (possibly the constant 1). Throws empty_selection_error when no root
/// qualifies.
inline std::pair<MonicPoly, MonicPoly> split_by_predicate(
    const MonicPoly& p, const std::function<bool(cplx)>& keep) {
    std::vector<cplx> kept, rest;
    for (cplx r : p.roots()) {
        (keep(r) ? kept : rest).push_back(r);
    }
    if (kept.empty()) {
        throw empty_selection_error("no root satisfies the split predicate");
    }
    return {MonicPoly(std::move(kept)), MonicPoly(std::move(rest))};
}

namespace detail {

inline double log_binomial(int n, int m) {
    return std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
}

struct RootGroup {
    cplx value;
    int count;
};

inline std::vector<RootGroup> group_roots(const std::vector<cplx>& roots) {
    std::vector<RootGroup> groups;
    for (cplx r : roots) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const RootGroup& g) { return g.value == r; });
        if (it == groups.end()) {
            groups.push_back({r, 1});
        } else {
            it->count++;
        }
    }
    return groups;
}

}  // namespace detail

/// Enumerate every multiset split (q, r) of p with deg q = m, invoking
/// visit(q, r) once per distinct split. Repeated roots are deduplicated,
/// e.g. (z-1)^2 has a single m=1 split. Throws enumeration_cap_error when
/// C(n, m) exceeds the cap before enumeration starts.
template <typename Visit>
void for_each_factor_split(const MonicPoly& p, int m, Visit&& visit,
                           std::size_t cap = 1000000) {
    const int n = static_cast<int>(p.degree());
    if (m < 1 || m > n) throw error("factor split size out of range");
    if (detail::log_binomial(n, m) > std::log(static_cast<double>(cap)) + 1e-9) {
        throw enumeration_cap_error("C(n, m) exceeds the enumeration cap");
    }
    const auto groups = detail::group_roots(p.roots());
    std::vector<int> take(groups.size(), 0);
    // Depth-first over per-group multiplicities that sum to m.
    std::function<void(std::size_t, int)> rec = [&](std::size_t g, int remaining) {
        if (g == groups.size()) {
            if (remaining != 0) return;
            std::vector<cplx> kept, rest;
            for (std::size_t i = 0; i < groups.size(); ++i) {
                for (int k = 0; k < take[i]; ++k) kept.push_back(groups[i].value);
                for (int k = take[i]; k < groups[i].count; ++k) rest.push_back(groups[i].value);
            }
            visit(MonicPoly(std::move(kept)), MonicPoly(std::move(rest)));
            return;
        }
        const int hi = std::min(groups[g].count, remaining);
        for (int c = 0; c <= hi; ++c) {
            take[g] = c;
            rec(g + 1, remaining - c);
        }
        take[g] = 0;
    };
    rec(0, m);
}

/// log of the sup norm of p over the set. Scans the boundary samples, then
/// polishes every near-best local maximum along the boundary parameter with
/// golden-section search; the polished value is accurate to ~1e-13 relative
/// for smooth boundaries, which keeps long products of norms trustworthy.
inline double log_sup_norm(const MonicPoly& p, const CompactSet& set) {
    if (p.degree() == 0) return 0.0;  // ||1||_E = 1
    const auto& samples = set.boundary();
    const std::size_t n = samples.size();
    std::vector<double> score(n);
    if (n * p.degree() > (std::size_t{1} << 17)) {
        parallel_for(n, [&](std::size_t i) { score[i] = p.log_abs_at(samples[i]); });
    } else {
        for (std::size_t i = 0; i < n; ++i) score[i] = p.log_abs_at(samples[i]);
    }

    std::size_t best_idx = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (score[i] > score[best_idx]) best_idx = i;
    }
    double best = score[best_idx];

    // Local maxima of the sampled sequence near the global best. Sampling
    // alone can sit ~ (n h)^2 below the true sup, so every candidate basin
    // within a generous margin gets refined.
    const double margin = 0.5;
    const auto& locs = set.locations();
    auto neighbor_score = [&](std::size_t i, bool forward) {
        // Neighbor along the same curve; wraps on closed curves, -inf past
        // the ends of open ones so endpoints count as local maxima.
        const std::size_t curve = locs[i].curve;
        if (forward) {
            if (i + 1 < n && locs[i + 1].curve == curve) return score[i + 1];
            if (!set.curves()[curve].closed()) return -inf;
            std::size_t j = i;
            while (j > 0 && locs[j - 1].curve == curve) --j;
            return score[j];
        }
        if (i > 0 && locs[i - 1].curve == curve) return score[i - 1];
        if (!set.curves()[curve].closed()) return -inf;
        std::size_t j = i;
        while (j + 1 < n && locs[j + 1].curve == curve) ++j;
        return score[j];
    };
    std::vector<std::size_t> candidates;
    candidates.push_back(best_idx);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == best_idx || score[i] < best - margin) continue;
        if (score[i] >= neighbor_score(i, false) && score[i] >= neighbor_score(i, true)) {
            candidates.push_back(i);
        }
    }
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
    if (candidates.size() > 1024) candidates.resize(1024);

    for (std::size_t i : candidates) {
        const auto bracket = set.bracket_of(i);
        if (bracket.hi <= bracket.lo) continue;
        auto [t, v] = golden_max(
            [&](double s) { return p.log_abs_at(set.point_at(bracket.curve, s)); },
            bracket.lo, bracket.hi);
        (void)t;
        best = std::max(best, v);
    }
    return best;
}

inline double sup_norm(const MonicPoly& p, const CompactSet& set) {
    return std::exp(log_sup_norm(p, set));
}

}  // namespace polynorm
