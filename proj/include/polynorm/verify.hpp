#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polynorm/common.hpp"
#include "polynorm/constants.hpp"
#include "polynorm/geometry.hpp"
#include "polynorm/parallel.hpp"
#include "polynorm/polynomials.hpp"
#include "polynorm/potential.hpp"

namespace polynorm {

/// One certified instance of the product inequality
/// prod ||p_k|| <= M^n ||p|| or the factor inequality ||q|| <= C^n ||p||.
/// Linear lhs/rhs may overflow for very large degrees; the log fields are
/// always meaningful.
struct InequalityReport {
    enum class Kind { product, factor };

    Kind kind = Kind::product;
    int n = 0;
    int m = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double log_lhs = 0.0;
    double log_rhs = 0.0;
    double ratio = 0.0;   // lhs / rhs
    double slack = 0.0;   // rhs - lhs
    bool certified = false;
    std::string witness;
};

inline const char* to_string(InequalityReport::Kind k) {
    return k == InequalityReport::Kind::product ? "product" : "factor";
}

/// prod_k ||p_k||_E / ||prod p_k||_E, evaluated in log-space.
inline double log_product_ratio(const Factorization& f, const CompactSet& set) {
    double acc = 0.0;
    for (const MonicPoly& p : f.factors) acc += log_sup_norm(p, set);
    return acc - log_sup_norm(product(f), set);
}

inline double product_ratio(const Factorization& f, const CompactSet& set) {
    return std::exp(log_product_ratio(f, set));
}

namespace detail {

inline void require_factor(const MonicPoly& p, const MonicPoly& q) {
    std::vector<cplx> pool = p.roots();
    for (cplx r : q.roots()) {
        auto it = std::find(pool.begin(), pool.end(), r);
        if (it == pool.end()) {
            throw not_a_factor_error("q's roots are not a sub-multiset of p's roots");
        }
        pool.erase(it);
    }
}

}  // namespace detail

/// ||q||_E / ||p||_E for a monic factor q of p.
inline double factor_ratio(const MonicPoly& p, const MonicPoly& q, const CompactSet& set) {
    detail::require_factor(p, q);
    return std::exp(log_sup_norm(q, set) - log_sup_norm(p, set));
}

inline InequalityReport certify_product(const Factorization& f, const CompactSet& set,
                                        double m_const, double tol = 1e-9) {
    if (!(m_const >= 1.0)) throw error("certify_product requires M >= 1");
    InequalityReport rep;
    rep.kind = InequalityReport::Kind::product;
    const MonicPoly p = product(f);
    rep.n = static_cast<int>(p.degree());
    rep.m = static_cast<int>(f.factors.size());
    rep.log_lhs = 0.0;
    for (const MonicPoly& pk : f.factors) rep.log_lhs += log_sup_norm(pk, set);
    rep.log_rhs = rep.n * std::log(m_const) + log_sup_norm(p, set);
    rep.lhs = std::exp(rep.log_lhs);
    rep.rhs = std::exp(rep.log_rhs);
    rep.ratio = std::exp(rep.log_lhs - rep.log_rhs);
    rep.slack = rep.rhs - rep.lhs;
    rep.certified = rep.log_lhs <= rep.log_rhs + std::log1p(tol);
    std::ostringstream os;
    os << "degrees=";
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        os << (i ? "," : "") << f.factors[i].degree();
    }
    rep.witness = os.str();
    return rep;
}

inline InequalityReport certify_factor(const MonicPoly& p, const MonicPoly& q,
                                       const CompactSet& set, double c_const,
                                       double tol = 1e-9) {
    if (!(c_const >= 1.0)) throw error("certify_factor requires C >= 1");
    detail::require_factor(p, q);
    InequalityReport rep;
    rep.kind = InequalityReport::Kind::factor;
    rep.n = static_cast<int>(p.degree());
    rep.m = static_cast<int>(q.degree());
    rep.log_lhs = log_sup_norm(q, set);
    rep.log_rhs = rep.n * std::log(c_const) + log_sup_norm(p, set);
    rep.lhs = std::exp(rep.log_lhs);
    rep.rhs = std::exp(rep.log_rhs);
    rep.ratio = std::exp(rep.log_lhs - rep.log_rhs);
    rep.slack = rep.rhs - rep.lhs;
    rep.certified = rep.log_lhs <= rep.log_rhs + std::log1p(tol);
    rep.witness = "factor degree " + std::to_string(q.degree());
    return rep;
}

struct SplitSearchResult {
    double best_ratio = 0.0;
    MonicPoly best_q;
    MonicPoly best_r;
};

/// Exhaustive max of ||p1|| ||p2|| / ||p1 p2|| over all l-subsets of the
/// degree-n Chebyshev roots on [-1, 1]; attains the Kneser constant.
inline SplitSearchResult kneser_extremal_search(int n, int l, std::size_t cap = 1000000) {
    const MonicPoly p = chebyshev_monic(n, 1.0);
    const SetDescriptor d = SetDescriptor::segment(1.0);
    const CompactSet set = build_set(d, default_h(d));
    const double log_norm_p = log_sup_norm(p, set);

    SplitSearchResult out;
    double best = -inf;
    for_each_factor_split(
        p, l,
        [&](MonicPoly q, MonicPoly r) {
            const double v = log_sup_norm(q, set) + log_sup_norm(r, set) - log_norm_p;
            if (v > best) {
                best = v;
                out.best_q = std::move(q);
                out.best_r = std::move(r);
            }
        },
        cap);
    out.best_ratio = std::exp(best);
    return out;
}

struct EndpointSearchResult {
    double best_value = 0.0;      // max |q(-a)| over the m-subsets
    double bound_times_norm = 0.0;  // endpoint-bound multiplier * ||p||
    MonicPoly best_subset;
};

/// Exhaustive max of |q(-a)| over m-subsets q of the monic Chebyshev roots
/// on [-a, a], compared against the endpoint bound. The extremal subset is
/// discovered, not assumed.
inline EndpointSearchResult endpoint_factor_search(double a, int n, int m,
                                                   std::size_t cap = 1000000) {
    const MonicPoly p = chebyshev_monic(n, a);
    const SetDescriptor d = SetDescriptor::segment(a);
    const CompactSet set = build_set(d, default_h(d));
    const cplx endpoint{-a, 0.0};

    EndpointSearchResult out;
    double best = -inf;
    for_each_factor_split(
        p, m,
        [&](MonicPoly q, MonicPoly) {
            const double v = q.log_abs_at(endpoint);
            if (v > best) {
                best = v;
                out.best_subset = std::move(q);
            }
        },
        cap);
    out.best_value = std::exp(best);
    out.bound_times_norm =
        std::exp(log_borwein_endpoint_bound(a, m, n) + log_sup_norm(p, set));
    return out;
}

/// One row of the Fekete asymptotics table: the capacity estimate, the
/// empirical product constant from the extremal family
/// (prod_k d_E(a_k))^{1/n} / ||F_n||^{1/n}, and the Fekete-factor ratio
/// (||q_n|| / ||F_n||)^{1/n} for the factor with roots at distance >= 1
/// from the maximizing boundary point.
struct AsymptoticRow {
    int n = 0;
    double capacity_estimate = 0.0;
    double m_empirical = 0.0;
    double c_factor_ratio = 0.0;
    double delta_capacity = 0.0;  // |value - previous value|, 0 in the first row
    double delta_m = 0.0;
    double delta_c = 0.0;
};

inline std::vector<AsymptoticRow> asymptotic_sweep(const CompactSet& set,
                                                   const std::vector<int>& n_list,
                                                   const QuadratureOptions& opt = {}) {
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) throw error("n_list must be ascending");
    }
    const cplx u_star = c_numeric(set, n_list.empty() ? 2 : n_list.back(), opt).u_star;

    std::vector<AsymptoticRow> rows(n_list.size());
    parallel_for(n_list.size(), [&](std::size_t i) {
        const int n = n_list[i];
        const FeketeResult f = fekete_exchange(set, leja_points(set, n));
        AsymptoticRow row;
        row.n = n;
        row.capacity_estimate = f.capacity_estimate;
        double log_d = 0.0;
        for (cplx p : f.points) log_d += std::log(farthest_distance(set, p));
        row.m_empirical = std::exp(log_d / n) / f.capacity_estimate;
        std::vector<cplx> kept;
        for (cplx p : f.points) {
            if (std::abs(p - u_star) >= 1.0) kept.push_back(p);
        }
        const double log_q = log_sup_norm(MonicPoly(kept), set);
        const double log_f = log_sup_norm(MonicPoly(f.points), set);
        row.c_factor_ratio = std::exp((log_q - log_f) / n);
        rows[i] = row;
    });
    for (std::size_t i = 1; i < rows.size(); ++i) {
        rows[i].delta_capacity = std::abs(rows[i].capacity_estimate - rows[i - 1].capacity_estimate);
        rows[i].delta_m = std::abs(rows[i].m_empirical - rows[i - 1].m_empirical);
        rows[i].delta_c = std::abs(rows[i].c_factor_ratio - rows[i - 1].c_factor_ratio);
    }
    return rows;
}

struct DilationRow {
    double alpha = 0.0;
    double c = 0.0;
    std::string method;
};

struct DilationTable {
    std::vector<DilationRow> rows;
    bool strictly_decreasing = true;  // over the alphas >= 1
    double final_value = 0.0;
};

/// C_{alpha E} along an ascending list of dilations; closed forms for disks
/// and segments, the numeric route otherwise.
inline DilationTable dilation_sweep(const SetDescriptor& d, const std::vector<double>& alphas,
                                    int n, const QuadratureOptions& opt = {}) {
    for (std::size_t i = 1; i < alphas.size(); ++i) {
        if (alphas[i] <= alphas[i - 1]) throw error("alphas must be ascending");
    }
    const bool analytic = d.kind() == SetDescriptor::Kind::disk ||
                          d.kind() == SetDescriptor::Kind::segment;
    DilationTable table;
    table.rows.resize(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t i) {
        const SetDescriptor scaled = d.scaled(alphas[i]);
        DilationRow row;
        row.alpha = alphas[i];
        if (analytic) {
            row.c = c_exact(scaled, opt);
            row.method = "exact";
        } else {
            const CompactSet set = build_set(scaled, default_h(scaled));
            row.c = c_numeric(set, n, opt).c;
            row.method = "fekete";
        }
        table.rows[i] = row;
    });
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        if (table.rows[i].alpha >= 1.0 && table.rows[i].c >= table.rows[i - 1].c) {
            table.strictly_decreasing = false;
        }
    }
    table.final_value = table.rows.empty() ? 0.0 : table.rows.back().c;
    return table;
}

/// Star-shaped simple polygon with deterministic geometry from the RNG.
inline SetDescriptor random_polygon(Rng& rng) {
    for (;;) {
        const int k = static_cast<int>(rng.uniform_int(3, 10));
        std::vector<double> angles(k);
        for (double& t : angles) t = rng.uniform(0.0, 2.0 * pi);
        std::sort(angles.begin(), angles.end());
        double min_gap = angles.front() + 2.0 * pi - angles.back();
        for (int i = 1; i < k; ++i) min_gap = std::min(min_gap, angles[i] - angles[i - 1]);
        if (min_gap < 0.05) continue;
        std::vector<cplx> vertices;
        vertices.reserve(k);
        for (double t : angles) vertices.push_back(std::polar(rng.uniform(0.5, 1.5), t));
        try {
            return SetDescriptor::polygon(std::move(vertices));
        } catch (const invalid_descriptor_error&) {
            continue;  // cannot happen for star-shaped vertices; belt and braces
        }
    }
}

struct RandomCertificationConfig {
    std::uint64_t seed = 42;
    int cases = 1000;
    int max_degree = 12;
    double tol = 1e-9;
    double h_rel = 1e-2;  // boundary gap as a fraction of the diameter
    int measure_n = 128;  // Fekete degree behind numeric constants
};

struct CertificationSummary {
    int total = 0;
    int product_cases = 0;
    int factor_cases = 0;
    int failures = 0;
    double min_log_slack = inf;  // min of log_rhs - log_lhs over all cases
    std::vector<InequalityReport> failed;
};

/// Seeded randomized certification across disks, segments, and random
/// polygons. Roots are sampled uniformly on the boundary and split uniformly
/// at random; every case must satisfy its inequality with slack >= -tol.
inline CertificationSummary randomized_certification(const RandomCertificationConfig& cfg) {
    struct PoolEntry {
        CompactSet set;
        double m_const;
        double c_const;
    };
    std::vector<PoolEntry> pool;
    Rng seeder(cfg.seed);
    auto add_set = [&](const SetDescriptor& d) {
        const CompactSet set = build_set(d, cfg.h_rel * descriptor_diameter(d));
        const bool analytic = d.kind() == SetDescriptor::Kind::disk ||
                              d.kind() == SetDescriptor::Kind::segment;
        const double m_c = analytic ? m_exact(d) : m_numeric(set, cfg.measure_n);
        const double c_c = analytic ? c_exact(d) : c_numeric(set, cfg.measure_n).c;
        pool.push_back({set, m_c, c_c});
    };
    add_set(SetDescriptor::disk({0.0, 0.0}, 1.0));
    add_set(SetDescriptor::disk({0.0, 0.0}, 0.7));
    add_set(SetDescriptor::segment(1.0));
    add_set(SetDescriptor::segment(2.0));
    for (int i = 0; i < 4; ++i) {
        Rng poly_rng = seeder.split(1000 + static_cast<std::uint64_t>(i));
        add_set(random_polygon(poly_rng));
    }

    std::vector<InequalityReport> reports(static_cast<std::size_t>(cfg.cases));
    parallel_for(reports.size(), [&](std::size_t i) {
        Rng rng = Rng(cfg.seed).split(i + 1);
        const PoolEntry& entry = pool[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1))];
        const int n = static_cast<int>(rng.uniform_int(2, cfg.max_degree));
        std::vector<cplx> roots;
        roots.reserve(static_cast<std::size_t>(n));
        const double total = entry.set.total_length();
        for (int k = 0; k < n; ++k) {
            roots.push_back(entry.set.point_at_arclength(rng.uniform(0.0, total)));
        }
        const bool product_case = (rng.next_u64() & 1) == 0;
        if (product_case) {
            const int m = static_cast<int>(rng.uniform_int(1, n));
            std::vector<std::vector<cplx>> buckets(static_cast<std::size_t>(m));
            for (cplx r : roots) {
                buckets[static_cast<std::size_t>(rng.uniform_int(0, m - 1))].push_back(r);
            }
            Factorization f;
            for (auto& b : buckets) {
                if (!b.empty()) f.factors.emplace_back(std::move(b));
            }
            reports[i] = certify_product(f, entry.set, entry.m_const, cfg.tol);
        } else {
            std::vector<cplx> subset;
            for (cplx r : roots) {
                if (rng.next_u64() & 1) subset.push_back(r);
            }
            if (subset.empty()) subset.push_back(roots.front());
            reports[i] = certify_factor(MonicPoly(roots), MonicPoly(std::move(subset)),
                                        entry.set, entry.c_const, cfg.tol);
        }
    });

    CertificationSummary summary;
    summary.total = cfg.cases;
    for (const InequalityReport& rep : reports) {
        if (rep.kind == InequalityReport::Kind::product) {
            summary.product_cases++;
        } else {
            summary.factor_cases++;
        }
        summary.min_log_slack = std::min(summary.min_log_slack, rep.log_rhs - rep.log_lhs);
        if (!rep.certified) {
            summary.failures++;
            summary.failed.push_back(rep);
        }
    }
    return summary;
}

/// Numeric evidence for the conjectured universal bracket
/// 2 <= M_E <= 3.2099123 over random polygon families. Report-only; nothing
/// here asserts the conjecture.
struct ConjectureProbeRow {
    std::string label;
    double m_value = 0.0;
};

inline std::vector<ConjectureProbeRow> conjecture_probe(int count, std::uint64_t seed, int n,
                                                        double h_rel = 1e-2) {
    std::vector<ConjectureProbeRow> rows(static_cast<std::size_t>(count));
    Rng seeder(seed);
    parallel_for(rows.size(), [&](std::size_t i) {
        Rng rng = seeder.split(500 + i);
        const SetDescriptor d = random_polygon(rng);
        const CompactSet set = build_set(d, h_rel * descriptor_diameter(d));
        rows[i].label = "polygon-" + std::to_string(i) + " (" +
                        std::to_string(d.as_polygon().vertices.size()) + " vertices)";
        rows[i].m_value = m_numeric(set, n);
    });
    return rows;
}

}  // namespace polynorm
