#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "polynorm/common.hpp"
#include "polynorm/constants.hpp"
#include "polynorm/geometry.hpp"
#include "polynorm/polynomials.hpp"
#include "polynorm/potential.hpp"
#include "polynorm/verify.hpp"

namespace polynorm {

using json = nlohmann::ordered_json;

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw invalid_descriptor_error("expected [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

/// {"kind":"disk","center":[x,y],"r":..}, {"kind":"segment","a":..},
/// {"kind":"polygon","vertices":[[x,y],...]}, with an optional
/// {"transform":{"rotate":..,"translate":[x,y],"scale":..}}. Arc unions
/// carry parametric curves and have no wire form.
inline json to_json(const SetDescriptor& d) {
    json j;
    switch (d.kind()) {
        case SetDescriptor::Kind::disk:
            j["kind"] = "disk";
            j["center"] = to_json(d.as_disk().center);
            j["r"] = d.as_disk().r;
            break;
        case SetDescriptor::Kind::segment:
            j["kind"] = "segment";
            j["a"] = d.as_segment().a;
            break;
        case SetDescriptor::Kind::polygon: {
            j["kind"] = "polygon";
            json verts = json::array();
            for (cplx v : d.as_polygon().vertices) verts.push_back(to_json(v));
            j["vertices"] = std::move(verts);
            break;
        }
        case SetDescriptor::Kind::arc_union:
            throw unsupported_descriptor_error("arc-union descriptors have no JSON form");
    }
    if (d.transform()) {
        const Transform& t = *d.transform();
        j["transform"] = {{"rotate", t.rotate},
                          {"translate", to_json(t.translate)},
                          {"scale", t.scale}};
    }
    return j;
}

inline SetDescriptor descriptor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) {
        throw invalid_descriptor_error("descriptor JSON must be an object with a kind");
    }
    const std::string kind = j.at("kind").get<std::string>();
    SetDescriptor d = SetDescriptor::disk({0.0, 0.0}, 1.0);
    if (kind == "disk") {
        const cplx center =
            j.contains("center") ? cplx_from_json(j.at("center")) : cplx{0.0, 0.0};
        d = SetDescriptor::disk(center, j.at("r").get<double>());
    } else if (kind == "segment") {
        d = SetDescriptor::segment(j.at("a").get<double>());
    } else if (kind == "polygon") {
        std::vector<cplx> vertices;
        for (const json& v : j.at("vertices")) vertices.push_back(cplx_from_json(v));
        d = SetDescriptor::polygon(std::move(vertices));
    } else {
        throw invalid_descriptor_error("unknown descriptor kind: " + kind);
    }
    if (j.contains("transform")) {
        const json& t = j.at("transform");
        Transform tr;
        if (t.contains("rotate")) tr.rotate = t.at("rotate").get<double>();
        if (t.contains("translate")) tr.translate = cplx_from_json(t.at("translate"));
        if (t.contains("scale")) tr.scale = t.at("scale").get<double>();
        d = d.with_transform(tr);
    }
    return d;
}

/// Polynomials travel as arrays of [re, im] root pairs.
inline json to_json(const MonicPoly& p) {
    json j = json::array();
    for (cplx r : p.roots()) j.push_back(to_json(r));
    return j;
}

inline MonicPoly poly_from_json(const json& j) {
    std::vector<cplx> roots;
    for (const json& r : j) roots.push_back(cplx_from_json(r));
    return MonicPoly(std::move(roots));
}

inline json to_json(const FeketeResult& f) {
    json pts = json::array();
    for (cplx p : f.points) pts.push_back(to_json(p));
    return json{{"n", f.n},
                {"method", to_string(f.method)},
                {"capacity_estimate", f.capacity_estimate},
                {"points", std::move(pts)}};
}

inline json to_json(const Provenance& p) {
    return json{{"value", p.value},
                {"method", p.method},
                {"n", p.n},
                {"h", p.h},
                {"tolerance", p.tolerance}};
}

inline json to_json(const ConstantsReport& r) {
    return json{{"set", to_json(r.set)},
                {"capacity", to_json(r.capacity)},
                {"M", to_json(r.m)},
                {"C", to_json(r.c)},
                {"M_upper", to_json(r.m_upper)},
                {"u_star", to_json(r.u_star)},
                {"notes", r.notes}};
}

inline json to_json(const InequalityReport& r) {
    return json{{"kind", to_string(r.kind)},
                {"n", r.n},
                {"m", r.m},
                {"lhs", r.lhs},
                {"rhs", r.rhs},
                {"log_lhs", r.log_lhs},
                {"log_rhs", r.log_rhs},
                {"ratio", r.ratio},
                {"slack", r.slack},
                {"certified", r.certified},
                {"witness", r.witness}};
}

inline json to_json(const AsymptoticRow& r) {
    return json{{"n", r.n},
                {"capacity_estimate", r.capacity_estimate},
                {"m_empirical", r.m_empirical},
                {"c_factor_ratio", r.c_factor_ratio},
                {"delta_capacity", r.delta_capacity},
                {"delta_m", r.delta_m},
                {"delta_c", r.delta_c}};
}

inline json to_json(const DilationRow& r) {
    return json{{"alpha", r.alpha}, {"C", r.c}, {"method", r.method}};
}

}  // namespace polynorm
