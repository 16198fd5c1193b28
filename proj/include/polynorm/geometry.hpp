#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "polynorm/common.hpp"

namespace polynorm {

/// Rigid motion plus dilation: z -> scale * e^{i rotate} * z + translate.
struct Transform {
    double rotate = 0.0;
    cplx translate{0.0, 0.0};
    double scale = 1.0;

    cplx linear() const { return std::polar(scale, rotate); }
    cplx operator()(cplx z) const { return linear() * z + translate; }
};

struct Disk {
    cplx center{0.0, 0.0};
    double r = 1.0;
};

/// The segment [-a, a] on the real axis.
struct Segment {
    double a = 1.0;
};

struct Polygon {
    std::vector<cplx> vertices;  // simple closed polyline, >= 3 vertices
};

/// Union of parametric curves, each mapping [0, 1] into the plane.
/// API-only: this kind has no JSON wire form.
struct ArcUnion {
    std::vector<std::function<cplx(double)>> curves;
};

class SetDescriptor {
public:
    enum class Kind { disk, segment, polygon, arc_union };

    static SetDescriptor disk(cplx center, double r) {
        return SetDescriptor(Disk{center, r});
    }
    static SetDescriptor segment(double a) { return SetDescriptor(Segment{a}); }
    static SetDescriptor polygon(std::vector<cplx> vertices) {
        return SetDescriptor(Polygon{std::move(vertices)});
    }
    static SetDescriptor arc_union(std::vector<std::function<cplx(double)>> curves) {
        return SetDescriptor(ArcUnion{std::move(curves)});
    }

    Kind kind() const {
        return static_cast<Kind>(shape_.index());
    }

    const Disk& as_disk() const { return std::get<Disk>(shape_); }
    const Segment& as_segment() const { return std::get<Segment>(shape_); }
    const Polygon& as_polygon() const { return std::get<Polygon>(shape_); }
    const ArcUnion& as_arc_union() const { return std::get<ArcUnion>(shape_); }

    const std::optional<Transform>& transform() const { return transform_; }

    SetDescriptor with_transform(const Transform& t) const {
        SetDescriptor d = *this;
        d.transform_ = t;
        d.validate();
        return d;
    }

    /// The dilation alpha * E (about the origin).
    SetDescriptor scaled(double alpha) const {
        if (!(alpha > 0.0) || !std::isfinite(alpha)) {
            throw invalid_descriptor_error("dilation factor must be positive and finite");
        }
        SetDescriptor d = *this;
        Transform t = transform_.value_or(Transform{});
        t.scale *= alpha;
        t.translate *= alpha;
        if (t.rotate != 0.0 || t.translate != cplx{0.0, 0.0} || t.scale != 1.0) {
            d.transform_ = t;
        }
        return d;
    }

    void validate() const;

    // Geometry of the transformed set, exact for the analytic kinds.
    cplx map_point(cplx z) const {
        return transform_ ? (*transform_)(z) : z;
    }
    double map_scale() const { return transform_ ? transform_->scale : 1.0; }

private:
    template <typename Shape>
    explicit SetDescriptor(Shape s) : shape_(std::move(s)) {
        validate();
    }

    std::variant<Disk, Segment, Polygon, ArcUnion> shape_;
    std::optional<Transform> transform_;
};

namespace detail {

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline double cross(cplx o, cplx a, cplx b) {
    const cplx u = a - o, v = b - o;
    return u.real() * v.imag() - u.imag() * v.real();
}

inline bool on_segment(cplx p, cplx q, cplx r) {
    // r collinear with pq assumed; is r within the box?
    return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
           std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
}

inline bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    if (d1 == 0 && on_segment(q1, q2, p1)) return true;
    if (d2 == 0 && on_segment(q1, q2, p2)) return true;
    if (d3 == 0 && on_segment(p1, p2, q1)) return true;
    if (d4 == 0 && on_segment(p1, p2, q2)) return true;
    return false;
}

inline bool polygon_is_simple(const std::vector<cplx>& v) {
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (v[i] == v[(i + 1) % m]) return false;  // zero-length edge
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == m - 1);
            if (adjacent) continue;
            if (segments_intersect(v[i], v[(i + 1) % m], v[j], v[(j + 1) % m])) return false;
        }
    }
    return true;
}

}  // namespace detail

inline void SetDescriptor::validate() const {
    if (transform_) {
        const Transform& t = *transform_;
        if (!(t.scale > 0.0) || !std::isfinite(t.scale) || !std::isfinite(t.rotate) ||
            !detail::finite(t.translate)) {
            throw invalid_descriptor_error("transform must have finite parameters and scale > 0");
        }
    }
    switch (kind()) {
        case Kind::disk: {
            const Disk& d = as_disk();
            if (!(d.r > 0.0) || !std::isfinite(d.r) || !detail::finite(d.center)) {
                throw invalid_descriptor_error("disk requires finite center and r > 0");
            }
            break;
        }
        case Kind::segment: {
            const Segment& s = as_segment();
            if (!(s.a > 0.0) || !std::isfinite(s.a)) {
                throw invalid_descriptor_error("segment requires a > 0");
            }
            break;
        }
        case Kind::polygon: {
            const Polygon& p = as_polygon();
            if (p.vertices.size() < 3) {
                throw invalid_descriptor_error("polygon requires at least 3 vertices");
            }
            for (cplx v : p.vertices) {
                if (!detail::finite(v)) throw invalid_descriptor_error("polygon vertex not finite");
            }
            if (!detail::polygon_is_simple(p.vertices)) {
                throw invalid_descriptor_error("polygon is self-intersecting");
            }
            break;
        }
        case Kind::arc_union: {
            if (as_arc_union().curves.empty()) {
                throw invalid_descriptor_error("arc-union requires at least one curve");
            }
            break;
        }
    }
}

/// One connected boundary curve with an arclength parametrization.
class BoundaryCurve {
public:
    static BoundaryCurve circle(cplx center, double radius) {
        BoundaryCurve c;
        c.is_circle_ = true;
        c.center_ = center;
        c.radius_ = radius;
        c.closed_ = true;
        return c;
    }

    static BoundaryCurve polyline(std::vector<cplx> nodes, bool closed) {
        BoundaryCurve c;
        c.closed_ = closed;
        if (closed) nodes.push_back(nodes.front());
        c.nodes_ = std::move(nodes);
        c.cum_.resize(c.nodes_.size());
        c.cum_[0] = 0.0;
        for (std::size_t i = 1; i < c.nodes_.size(); ++i) {
            c.cum_[i] = c.cum_[i - 1] + std::abs(c.nodes_[i] - c.nodes_[i - 1]);
        }
        return c;
    }

    bool closed() const { return closed_; }
    double length() const { return is_circle_ ? 2.0 * pi * radius_ : cum_.back(); }

    cplx at(double s) const {
        if (is_circle_) {
            return center_ + std::polar(radius_, s / radius_);
        }
        if (closed_) {
            s = std::fmod(s, cum_.back());
            if (s < 0) s += cum_.back();
        } else {
            s = std::clamp(s, 0.0, cum_.back());
        }
        auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
        std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
            1, it - cum_.begin()));
        if (i >= cum_.size()) i = cum_.size() - 1;
        const double seg = cum_[i] - cum_[i - 1];
        const double t = seg > 0 ? (s - cum_[i - 1]) / seg : 0.0;
        return nodes_[i - 1] + t * (nodes_[i] - nodes_[i - 1]);
    }

private:
    bool is_circle_ = false;
    cplx center_{0.0, 0.0};
    double radius_ = 0.0;
    std::vector<cplx> nodes_;
    std::vector<double> cum_;
    bool closed_ = false;
};

/// An immutable planar compact set with a discretized boundary. All
/// operations on a built set are pure and thread-safe.
class CompactSet {
public:
    struct SampleLocation {
        std::size_t curve;
        double s;  // arclength parameter within the curve
    };

    /// Refinement bracket around a boundary sample: [lo, hi] in the sample's
    /// curve parameter (hi may exceed the curve length when the curve is
    /// closed and the bracket wraps).
    struct Bracket {
        std::size_t curve;
        double lo, hi;
    };

    const SetDescriptor& descriptor() const { return descriptor_; }
    double h() const { return h_; }
    bool regular() const { return regular_; }
    const std::vector<cplx>& boundary() const { return samples_; }
    const std::vector<SampleLocation>& locations() const { return locations_; }
    const std::vector<BoundaryCurve>& curves() const { return curves_; }

    cplx point_at(std::size_t curve, double s) const { return curves_[curve].at(s); }

    double total_length() const {
        double acc = 0.0;
        for (const auto& c : curves_) acc += c.length();
        return acc;
    }

    /// Point at a global arclength parameter across all curves (uniform
    /// sampling of the whole boundary).
    cplx point_at_arclength(double s) const {
        for (const auto& c : curves_) {
            if (s <= c.length()) return c.at(s);
            s -= c.length();
        }
        return curves_.back().at(curves_.back().length());
    }

    Bracket bracket_of(std::size_t i) const {
        const SampleLocation loc = locations_[i];
        const BoundaryCurve& c = curves_[loc.curve];
        // Neighbors within the same curve; samples are stored curve-major in
        // increasing parameter order.
        double lo = loc.s, hi = loc.s;
        if (i > 0 && locations_[i - 1].curve == loc.curve) {
            lo = locations_[i - 1].s;
        } else if (c.closed()) {
            // wrap to the last sample of this curve
            std::size_t j = i;
            while (j + 1 < locations_.size() && locations_[j + 1].curve == loc.curve) ++j;
            lo = locations_[j].s - c.length();
        }
        if (i + 1 < locations_.size() && locations_[i + 1].curve == loc.curve) {
            hi = locations_[i + 1].s;
        } else if (c.closed()) {
            std::size_t j = i;
            while (j > 0 && locations_[j - 1].curve == loc.curve) --j;
            hi = locations_[j].s + c.length();
        }
        return Bracket{loc.curve, lo, hi};
    }

    friend CompactSet build_set(const SetDescriptor& descriptor, double h);

private:
    SetDescriptor descriptor_ = SetDescriptor::disk({0.0, 0.0}, 1.0);
    double h_ = 0.0;
    bool regular_ = true;
    std::vector<BoundaryCurve> curves_;
    std::vector<cplx> samples_;
    std::vector<SampleLocation> locations_;

    void push_sample(std::size_t curve, double s) {
        locations_.push_back({curve, s});
        samples_.push_back(curves_[curve].at(s));
    }
};

/// Euclidean diameter straight from the descriptor; exact for disk, segment
/// and polygon, flattened-sample based for arc unions.
inline double descriptor_diameter(const SetDescriptor& d) {
    switch (d.kind()) {
        case SetDescriptor::Kind::disk:
            return 2.0 * d.as_disk().r * d.map_scale();
        case SetDescriptor::Kind::segment:
            return 2.0 * d.as_segment().a * d.map_scale();
        case SetDescriptor::Kind::polygon: {
            const auto& v = d.as_polygon().vertices;
            double best = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                for (std::size_t j = i + 1; j < v.size(); ++j) {
                    best = std::max(best, std::abs(d.map_point(v[i]) - d.map_point(v[j])));
                }
            }
            return best;
        }
        case SetDescriptor::Kind::arc_union: {
            std::vector<cplx> pts;
            for (const auto& curve : d.as_arc_union().curves) {
                for (int k = 0; k <= 256; ++k) {
                    pts.push_back(d.map_point(curve(k / 256.0)));
                }
            }
            double best = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                for (std::size_t j = i + 1; j < pts.size(); ++j) {
                    best = std::max(best, std::abs(pts[i] - pts[j]));
                }
            }
            return best;
        }
    }
    return 0.0;
}

/// Default boundary resolution: 1e-3 of the diameter.
inline double default_h(const SetDescriptor& d) { return 1e-3 * descriptor_diameter(d); }

/// Discretize the boundary of a descriptor with consecutive-sample arc gap
/// at most h. Polygon vertices are always sample points.
inline CompactSet build_set(const SetDescriptor& descriptor, double h) {
    descriptor.validate();
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw invalid_descriptor_error("sampling gap h must be positive and finite");
    }
    CompactSet set;
    set.descriptor_ = descriptor;
    set.h_ = h;
    set.regular_ = true;

    switch (descriptor.kind()) {
        case SetDescriptor::Kind::disk: {
            const Disk& dd = descriptor.as_disk();
            const cplx c = descriptor.map_point(dd.center);
            const double r = dd.r * descriptor.map_scale();
            set.curves_.push_back(BoundaryCurve::circle(c, r));
            const double len = 2.0 * pi * r;
            const auto n = static_cast<std::size_t>(std::ceil(len / h));
            for (std::size_t k = 0; k < n; ++k) {
                set.push_sample(0, len * static_cast<double>(k) / static_cast<double>(n));
            }
            break;
        }
        case SetDescriptor::Kind::segment: {
            const double a = descriptor.as_segment().a;
            const cplx e0 = descriptor.map_point(cplx{-a, 0.0});
            const cplx e1 = descriptor.map_point(cplx{a, 0.0});
            set.curves_.push_back(BoundaryCurve::polyline({e0, e1}, false));
            const double len = std::abs(e1 - e0);
            const auto n = static_cast<std::size_t>(std::ceil(len / h));
            for (std::size_t k = 0; k <= n; ++k) {
                set.push_sample(0, len * static_cast<double>(k) / static_cast<double>(n));
            }
            break;
        }
        case SetDescriptor::Kind::polygon: {
            std::vector<cplx> v;
            for (cplx p : descriptor.as_polygon().vertices) v.push_back(descriptor.map_point(p));
            set.curves_.push_back(BoundaryCurve::polyline(v, true));
            double offset = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) {
                const double edge = std::abs(v[(j + 1) % v.size()] - v[j]);
                const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(edge / h)));
                for (std::size_t i = 0; i < m; ++i) {
                    set.push_sample(0, offset + edge * static_cast<double>(i) / static_cast<double>(m));
                }
                offset += edge;
            }
            break;
        }
        case SetDescriptor::Kind::arc_union: {
            // Flatten each curve finely enough that consecutive gaps fit h.
            for (const auto& curve : descriptor.as_arc_union().curves) {
                std::size_t m = 64;
                std::vector<cplx> nodes;
                const std::size_t limit = std::size_t{1} << 20;
                for (;; m *= 2) {
                    nodes.clear();
                    double max_gap = 0.0;
                    cplx prev = descriptor.map_point(curve(0.0));
                    nodes.push_back(prev);
                    for (std::size_t k = 1; k <= m; ++k) {
                        const cplx p = descriptor.map_point(curve(static_cast<double>(k) / static_cast<double>(m)));
                        max_gap = std::max(max_gap, std::abs(p - prev));
                        nodes.push_back(p);
                        prev = p;
                    }
                    if (max_gap <= h || m >= limit) break;
                }
                const std::size_t curve_idx = set.curves_.size();
                set.curves_.push_back(BoundaryCurve::polyline(nodes, false));
                const BoundaryCurve& bc = set.curves_.back();
                const double len = bc.length();
                const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / h)));
                for (std::size_t k = 0; k <= n; ++k) {
                    set.push_sample(curve_idx, len * static_cast<double>(k) / static_cast<double>(n));
                }
            }
            break;
        }
    }
    if (set.samples_.empty()) {
        throw invalid_descriptor_error("descriptor produced an empty boundary");
    }
    return set;
}

/// The farthest-distance function d_E(z) = max_{t in E} |z - t|. Exact for
/// disk and segment, vertex-exact for polygons, sample-based otherwise.
inline double farthest_distance(const CompactSet& set, cplx z) {
    const SetDescriptor& d = set.descriptor();
    switch (d.kind()) {
        case SetDescriptor::Kind::disk: {
            const Disk& dd = d.as_disk();
            return std::abs(z - d.map_point(dd.center)) + dd.r * d.map_scale();
        }
        case SetDescriptor::Kind::segment: {
            const double a = d.as_segment().a;
            return std::max(std::abs(z - d.map_point(cplx{-a, 0.0})),
                            std::abs(z - d.map_point(cplx{a, 0.0})));
        }
        case SetDescriptor::Kind::polygon: {
            // |z - t| over an edge is maximized at a vertex.
            double best = 0.0;
            for (cplx v : d.as_polygon().vertices) {
                best = std::max(best, std::abs(z - d.map_point(v)));
            }
            return best;
        }
        case SetDescriptor::Kind::arc_union: {
            double best = 0.0;
            for (cplx s : set.boundary()) best = std::max(best, std::abs(z - s));
            return best;
        }
    }
    return 0.0;
}

inline double diameter(const CompactSet& set) {
    const SetDescriptor& d = set.descriptor();
    if (d.kind() == SetDescriptor::Kind::arc_union) {
        const auto& pts = set.boundary();
        double best = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                best = std::max(best, std::abs(pts[i] - pts[j]));
            }
        }
        return best;
    }
    return descriptor_diameter(d);
}

}  // namespace polynorm
