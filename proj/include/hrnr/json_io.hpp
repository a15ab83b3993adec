#pragma once

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hrnr/closed_form.hpp"
#include "hrnr/halfplane_geometry.hpp"
#include "hrnr/lisze_sampler.hpp"
#include "hrnr/oracles_witnesses.hpp"

namespace hrnr {

using json = nlohmann::json;

/// Round to 12 significant digits; all JSON/SVG output goes through this so
/// emitted bytes are stable across runs and platforms with the same libc.
inline double round_sig12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline json complex_to_json(complex_t z) {
    return json::array({round_sig12(z.real()), round_sig12(z.imag())});
}

inline const char* region_kind_name(RegionKind kind) {
    switch (kind) {
        case RegionKind::polygon: return "polygon";
        case RegionKind::segment: return "segment";
        case RegionKind::point: return "point";
        case RegionKind::empty: return "empty";
    }
    return "empty";
}

inline json region_to_json(const ConvexRegion& region) {
    json vertices = json::array();
    for (const auto& v : region.vertices)
        vertices.push_back(json::array({round_sig12(v.x), round_sig12(v.y)}));
    return json{{"kind", region_kind_name(region.kind)}, {"vertices", std::move(vertices)}};
}

inline ConvexRegion region_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    std::vector<Point2> vertices;
    for (const auto& v : j.at("vertices"))
        vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    if (kind == "empty") return make_empty_region();
    if (kind == "point") {
        if (vertices.size() != 1) throw std::invalid_argument("region_from_json: point needs 1 vertex");
        return make_point_region(vertices[0]);
    }
    if (kind == "segment") {
        if (vertices.size() != 2) throw std::invalid_argument("region_from_json: segment needs 2 vertices");
        return make_segment_region(vertices[0], vertices[1]);
    }
    if (kind == "polygon") return make_polygon_region(std::move(vertices));
    throw std::invalid_argument("region_from_json: unknown kind " + kind);
}

inline json profile_to_json(const SupportProfile& profile) {
    json samples = json::array();
    for (std::size_t i = 0; i < profile.thetas.size(); ++i)
        samples.push_back(json::array({round_sig12(profile.thetas[i]), round_sig12(profile.lambdas[i])}));
    return json{{"k", profile.k}, {"samples", std::move(samples)}};
}

inline json descriptor_to_json(const RegionDescriptor& d) {
    json params{
        {"n", d.n},
        {"m", d.m},
        {"k", d.k},
        {"beta", complex_to_json(d.beta)},
        {"r", round_sig12(d.r)},
        {"phi_k", round_sig12(d.angles.phi_k)},
        {"psi_km", round_sig12(d.angles.psi_km)},
        {"delta_k", round_sig12(d.angles.delta_k)},
        {"eta_km", round_sig12(d.angles.eta_km)},
        {"cos_phi_k", round_sig12(d.angles.cos_phi_k)},
        {"cos_psi_km", round_sig12(d.angles.cos_psi_km)},
    };
    switch (d.case_id) {
        case 1:
            params["disk_radius"] = round_sig12(d.angles.cos_phi_k);
            break;
        case 2:
        case 3:
            params["disk_radius"] = round_sig12(d.angles.cos_phi_k);
            params["apex"] = complex_to_json(d.to_world(complex_t{d.r, 0.0}));
            if (d.case_id == 3) params["cap_radius"] = round_sig12(d.angles.cos_psi_km);
            break;
        case 4:
        case 5: {
            params["segment"] = json::array(
                {complex_to_json(d.to_world(complex_t{0.0, 0.0})),
                 complex_to_json(d.to_world(complex_t{d.segment_hi, 0.0}))});
            break;
        }
        case 6:
            params["point"] = complex_to_json(d.to_world(complex_t{d.r, 0.0}));
            break;
        default:
            break;
    }
    json out{{"case", d.case_id},
             {"alpha", complex_to_json(d.alpha)},
             {"psi", round_sig12(d.psi)},
             {"params", std::move(params)}};
    out["kind"] = (d.case_id == 7)   ? "empty"
                  : (d.case_id == 6) ? "point"
                  : (d.case_id >= 4) ? (d.segment_hi > 0.0 ? "segment" : "point")
                                     : "region";
    return out;
}

inline json witness_to_json(const ProjectionWitness& w) {
    return json{{"rank", w.rank},
                {"mu", complex_to_json(w.mu)},
                {"residual", round_sig12(w.residual)},
                {"accepted", w.accepted}};
}

/// Matrix file format: {"rows": N, "entries": [[re, im], ...]} row-major.
inline ComplexMatrix matrix_from_json(const json& j) {
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (rows == 0 || entries.size() % rows != 0)
        throw std::invalid_argument("matrix_from_json: entries not divisible into rows");
    const std::size_t cols = entries.size() / rows;
    std::vector<complex_t> values;
    values.reserve(entries.size());
    for (const auto& e : entries)
        values.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return ComplexMatrix(rows, cols, std::move(values));
}

inline json matrix_to_json(const ComplexMatrix& m) {
    json entries = json::array();
    for (const auto& z : m.entries()) entries.push_back(complex_to_json(z));
    return json{{"rows", m.rows()}, {"entries", std::move(entries)}};
}

}  // namespace hrnr
