#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hrnr/closed_form.hpp"
#include "hrnr/core_linalg.hpp"
#include "hrnr/halfplane_geometry.hpp"
#include "hrnr/json_io.hpp"
#include "hrnr/lisze_sampler.hpp"

namespace hrnr {

/// One requested job for the command-line front end. A raw matrix input can
/// only drive the sampler; a model input permits either engine.
struct JobSpec {
    std::optional<JordanScalarModel> model;
    std::optional<ComplexMatrix> matrix;
    std::size_t k = 1;
    bool all_k = false;
    enum class Engine { closed, sampler, both } engine = Engine::both;
    std::size_t resolution = 3600;
    std::size_t arc_steps = 720;
    std::string format = "json";  // "json" or "svg"
    bool show_sets = false;
    double tol = -1.0;  // negative = per-command default
    complex_t mu{0.0, 0.0};
};

struct CmdResult {
    int code = 0;  // 0 ok, 2 parse, 3 invariant violation, 4 engine disagreement
    std::string output;
};

// ---------------------------------------------------------------------------
// Engine comparison

/// Cross-validation verdict between the closed-form descriptor and the
/// sampled outer region. Degenerate rows are matched with a
/// resolution-aware allowance: a sampled stack of half-planes around a
/// segment leaves a sliver of width O(diameter * 2 pi / resolution) whose
/// extreme vertices are still exact, so segments and points are compared by
/// Hausdorff distance plus endpoint error along the segment axis.
struct ComparisonReport {
    int case_id = 0;
    std::string closed_kind;   // empty / point / segment / region
    std::string sampler_kind;  // raw intersect_halfplanes classification
    bool emptiness_agree = false;
    bool shape_agree = false;
    double hausdorff = -1.0;       // < 0 when not applicable
    double endpoint_error = -1.0;  // < 0 when not applicable
    double support_discrepancy = 0.0;
    bool pass = false;
};

inline std::string closed_kind_of(const RegionDescriptor& d) {
    if (d.case_id == 7) return "empty";
    if (d.case_id == 6) return "point";
    if (d.case_id >= 4) return d.segment_hi > 0.0 ? "segment" : "point";
    return "region";
}

inline ComparisonReport compare_profile(const JordanScalarModel& model, std::size_t k,
                                        const SupportProfile& profile, std::size_t arc_steps,
                                        double region_tol = 2e-3, double endpoint_tol = 1e-6) {
    ComparisonReport rep;
    const RegionDescriptor desc = classify(model, k);
    rep.case_id = desc.case_id;
    rep.closed_kind = closed_kind_of(desc);

    for (std::size_t i = 0; i < profile.thetas.size(); ++i)
        rep.support_discrepancy = std::max(
            rep.support_discrepancy,
            std::abs(profile.lambdas[i] - lambda_k_world(model, k, profile.thetas[i])));

    const ConvexRegion sampled = outer_region(profile);
    rep.sampler_kind = region_kind_name(sampled.kind);

    rep.emptiness_agree = (desc.is_empty() == sampled.is_empty());
    if (desc.is_empty() || sampled.is_empty()) {
        rep.shape_agree = rep.emptiness_agree;
        rep.pass = rep.emptiness_agree && rep.support_discrepancy <= 1e-6;
        return rep;
    }

    if (rep.closed_kind == "point") {
        const complex_t p = desc.to_world(complex_t{desc.case_id == 6 ? desc.r : 0.0, 0.0});
        rep.hausdorff = hausdorff_distance(sampled, make_point_region({p.real(), p.imag()}));
        rep.endpoint_error = rep.hausdorff;
        rep.shape_agree = rep.endpoint_error <= endpoint_tol;
    } else if (rep.closed_kind == "segment") {
        const complex_t wa = desc.to_world(complex_t{0.0, 0.0});
        const complex_t wb = desc.to_world(complex_t{desc.segment_hi, 0.0});
        const Point2 a{wa.real(), wa.imag()};
        const Point2 b{wb.real(), wb.imag()};
        rep.hausdorff = hausdorff_distance(sampled, make_segment_region(a, b));
        const double len = dist(a, b);
        const Point2 axis = (1.0 / len) * (b - a);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& v : sampled.vertices) {
            const double t = dot(axis, v - a);
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        rep.endpoint_error = std::max(std::abs(lo), std::abs(hi - len));
        rep.shape_agree = rep.endpoint_error <= endpoint_tol && rep.hausdorff <= region_tol;
    } else {
        rep.hausdorff = hausdorff_distance(sampled, discretize(desc, arc_steps));
        rep.shape_agree = (sampled.kind == RegionKind::polygon) && rep.hausdorff <= region_tol;
    }
    rep.pass = rep.emptiness_agree && rep.shape_agree && rep.support_discrepancy <= 1e-6;
    return rep;
}

inline ComparisonReport compare_engines(const JordanScalarModel& model, std::size_t k,
                                        std::size_t resolution = 3600, std::size_t arc_steps = 720) {
    const ComplexMatrix t = materialize(model);
    return compare_profile(model, k, sample_support(t, k, resolution), arc_steps);
}

// ---------------------------------------------------------------------------
// SVG rendering

namespace svg {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Math coordinates go in; the y axis is negated on emission so figures
/// render upright. A mathematically counterclockwise circular arc therefore
/// uses sweep flag 0.
struct Figure {
    double min_x = 0, min_y = 0, max_x = 1, max_y = 1;
    std::ostringstream body;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double stroke() const { return 0.0025 * std::max(width(), height()); }

    std::string pt(Point2 p) const { return num(p.x) + " " + num(-p.y); }

    void line(Point2 a, Point2 b, const std::string& color, double w, double opacity = 1.0) {
        body << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(-a.y) << "\" x2=\"" << num(b.x)
             << "\" y2=\"" << num(-b.y) << "\" stroke=\"" << color << "\" stroke-width=\""
             << num(w) << "\"";
        if (opacity < 1.0) body << " stroke-opacity=\"" << num(opacity) << "\"";
        body << "/>\n";
    }

    void circle(Point2 c, double r, const std::string& stroke_color, double w,
                const std::string& fill = "none") {
        body << "<circle cx=\"" << num(c.x) << "\" cy=\"" << num(-c.y) << "\" r=\"" << num(r)
             << "\" stroke=\"" << stroke_color << "\" stroke-width=\"" << num(w) << "\" fill=\""
             << fill << "\"/>\n";
    }

    void path(const std::string& d, const std::string& color, double w,
              const std::string& fill = "none") {
        body << "<path d=\"" << d << "\" stroke=\"" << color << "\" stroke-width=\"" << num(w)
             << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(Point2 p, const std::string& content, double size, const std::string& color) {
        body << "<text x=\"" << num(p.x) << "\" y=\"" << num(-p.y) << "\" font-size=\""
             << num(size) << "\" fill=\"" << color << "\" font-family=\"sans-serif\">" << content
             << "</text>\n";
    }

    /// Counterclockwise circular arc command from a to b around center c.
    std::string arc_to(Point2 c, Point2 a, Point2 b, double radius) const {
        const double t0 = std::atan2(a.y - c.y, a.x - c.x);
        double span = std::atan2(b.y - c.y, b.x - c.x) - t0;
        span = wrap_angle(span);
        const int large = span > pi ? 1 : 0;
        return "A " + num(radius) + " " + num(radius) + " 0 " + std::to_string(large) + " 0 " +
               pt(b) + " ";
    }

    std::string render() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\""
            << num(min_x) << " " << num(-max_y) << " " << num(width()) << " " << num(height())
            << "\">\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

/// Clip the support line {x cos t - y sin t = offset} to the figure box.
inline bool clip_support_line(const Figure& fig, double theta, double offset, Point2& a, Point2& b) {
    const Point2 u{std::cos(theta), -std::sin(theta)};
    const Point2 p0 = offset * u;
    const Point2 d{-u.y, u.x};
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    auto slab = [&](double dp, double p0p, double lo_b, double hi_b) {
        if (std::abs(dp) < 1e-15) return p0p >= lo_b - 1e-12 && p0p <= hi_b + 1e-12;
        double t0 = (lo_b - p0p) / dp, t1 = (hi_b - p0p) / dp;
        if (t0 > t1) std::swap(t0, t1);
        lo = std::max(lo, t0);
        hi = std::min(hi, t1);
        return true;
    };
    if (!slab(d.x, p0.x, fig.min_x, fig.max_x)) return false;
    if (!slab(d.y, p0.y, fig.min_y, fig.max_y)) return false;
    if (lo >= hi) return false;
    a = p0 + lo * d;
    b = p0 + hi * d;
    return true;
}

}  // namespace svg

namespace detail {

inline Point2 world_pt(const RegionDescriptor& d, complex_t z) {
    const complex_t w = d.to_world(z);
    return {w.real(), w.imag()};
}

/// Exact-arc boundary path for the nonempty 2-D cases.
inline void draw_closed_boundary(svg::Figure& fig, const RegionDescriptor& desc,
                                 const std::string& color) {
    const AngleData& a = desc.angles;
    const Point2 center = world_pt(desc, {0.0, 0.0});
    const double w = 1.6 * fig.stroke();

    if (desc.case_id == 7) {
        fig.text({center.x, center.y}, "empty", 12.0 * fig.stroke(), color);
        return;
    }
    if (desc.case_id == 6) {
        fig.circle(world_pt(desc, {desc.r, 0.0}), 1.5 * fig.stroke(), color, w, color);
        return;
    }
    if (desc.case_id >= 4) {
        const Point2 p0 = world_pt(desc, {0.0, 0.0});
        const Point2 p1 = world_pt(desc, {desc.segment_hi, 0.0});
        if (dist(p0, p1) == 0.0) fig.circle(p0, 1.5 * fig.stroke(), color, w, color);
        else fig.line(p0, p1, color, w);
        return;
    }

    const bool capped = desc.case_id == 3 && a.cos_psi_km < desc.r &&
                        a.cos_psi_km > a.cos_phi_k + 1e-15;
    if (desc.case_id == 1 || (desc.case_id == 3 && a.cos_psi_km < desc.r && !capped)) {
        // plain disk (case 1, or a cap circle collapsed onto the small one)
        fig.circle(center, a.cos_phi_k, color, w);
        return;
    }

    const double delta = a.delta_k;
    const Point2 t_hi = world_pt(desc, std::polar(a.cos_phi_k, delta));
    const Point2 t_lo = world_pt(desc, std::polar(a.cos_phi_k, -delta));
    std::string d = "M " + fig.pt(t_hi) + " " + fig.arc_to(center, t_hi, t_lo, a.cos_phi_k);
    if (!capped) {
        d += "L " + fig.pt(world_pt(desc, {desc.r, 0.0})) + " ";
    } else {
        const Point2 z_lo{a.cos_phi_k * std::cos(delta), -a.cos_phi_k * std::sin(delta)};
        const Point2 dir{desc.r - z_lo.x, -z_lo.y};
        const double qa = dot(dir, dir);
        const double qb = 2.0 * dot(z_lo, dir);
        const double qc = dot(z_lo, z_lo) - a.cos_psi_km * a.cos_psi_km;
        const double t = (-qb + std::sqrt(std::max(0.0, qb * qb - 4.0 * qa * qc))) / (2.0 * qa);
        const Point2 s_lo_z = z_lo + t * dir;
        const Point2 s_lo = world_pt(desc, {s_lo_z.x, s_lo_z.y});
        const Point2 s_hi = world_pt(desc, {s_lo_z.x, -s_lo_z.y});
        d += "L " + fig.pt(s_lo) + " " + fig.arc_to(center, s_lo, s_hi, a.cos_psi_km);
    }
    d += "Z";
    fig.path(d, color, w);
}

/// Colored arcs marking the angle sets (world directions psi + D_k in blue,
/// psi + C_km in red) at a marker radius around alpha.
inline void draw_angle_sets(svg::Figure& fig, const RegionDescriptor& desc, double marker_r) {
    const Point2 center = world_pt(desc, {0.0, 0.0});
    const double w = 1.2 * fig.stroke();
    auto draw_set = [&](const AngleSet& set, double r, const std::string& color) {
        if (set.kind == AngleSet::Kind::empty) return;
        if (set.kind == AngleSet::Kind::full) {
            fig.circle(center, r, color, w);
            return;
        }
        const double a0 = desc.psi + set.center - set.half_width;
        const double a1 = desc.psi + set.center + set.half_width;
        const Point2 p0 = center + Point2{r * std::cos(a0), r * std::sin(a0)};
        const Point2 p1 = center + Point2{r * std::cos(a1), r * std::sin(a1)};
        fig.line(center, p0, color, 0.5 * w, 0.7);
        fig.line(center, p1, color, 0.5 * w, 0.7);
        if (set.half_width > 0.0)
            fig.path("M " + fig.pt(p0) + " " + fig.arc_to(center, p0, p1, r), color, w);
    };
    draw_set(desc.dk, marker_r, "#3355cc");
    draw_set(desc.ckm, 0.92 * marker_r, "#cc3333");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

inline CmdResult cmd_classify(const JobSpec& spec) {
    if (!spec.model) return {2, "classify requires a model (--n --m --alpha --beta)\n"};
    json out;
    if (spec.all_k) {
        out = json::array();
        for (std::size_t k = 1; k <= spec.model->dim(); ++k)
            out.push_back(descriptor_to_json(classify(*spec.model, k)));
    } else {
        out = descriptor_to_json(classify(*spec.model, spec.k));
    }
    return {0, out.dump(2) + "\n"};
}

inline CmdResult cmd_sample(const JobSpec& spec) {
    if (!spec.model && !spec.matrix) return {2, "sample requires a model or --matrix-file\n"};
    ComplexMatrix t = spec.matrix ? *spec.matrix : materialize(*spec.model);
    json out;
    if (spec.all_k) {
        out = json::array();
        for (auto& profile : sample_support_all(t, spec.resolution))
            out.push_back(profile_to_json(profile));
    } else {
        out = profile_to_json(sample_support(t, spec.k, spec.resolution));
    }
    return {0, out.dump(2) + "\n"};
}

inline const char* membership_name(Membership m) {
    switch (m) {
        case Membership::inside: return "inside";
        case Membership::outside: return "outside";
        case Membership::boundary_uncertain: return "boundary-uncertain";
    }
    return "boundary-uncertain";
}

inline CmdResult cmd_member(const JobSpec& spec) {
    if (!spec.model && !spec.matrix) return {2, "member requires a model or --matrix-file\n"};
    const bool want_closed = spec.engine != JobSpec::Engine::sampler;
    const bool want_sampler = spec.engine != JobSpec::Engine::closed;
    if (spec.matrix && spec.engine == JobSpec::Engine::closed)
        return {2, "member: raw matrix input forces the sampler engine\n"};

    json engines = json::array();
    json out;
    std::string closed_verdict, sampler_verdict;

    if (want_closed && spec.model) {
        const RegionDescriptor desc = classify(*spec.model, spec.k);
        closed_verdict = region_contains(desc, spec.mu, spec.tol) ? "inside" : "outside";
        out["closed"] = closed_verdict;
        engines.push_back("closed");
    }
    if (want_sampler || !spec.model) {
        ComplexMatrix t = spec.matrix ? *spec.matrix : materialize(*spec.model);
        const auto rep = member(t, spec.k, spec.mu, spec.resolution, spec.tol);
        sampler_verdict = membership_name(rep.verdict);
        out["sampler"] = sampler_verdict;
        out["max_violation"] = round_sig12(rep.max_violation);
        engines.push_back("sampler");
    }
    out["engines"] = engines;

    std::string verdict = !sampler_verdict.empty() ? sampler_verdict : closed_verdict;
    if (!closed_verdict.empty() && !sampler_verdict.empty() &&
        sampler_verdict != "boundary-uncertain" && closed_verdict != sampler_verdict) {
        out["verdict"] = "disagreement";
        return {4, out.dump(2) + "\n"};
    }
    if (!closed_verdict.empty()) verdict = closed_verdict;
    out["verdict"] = verdict;
    return {0, out.dump(2) + "\n"};
}

inline json comparison_to_json(const ComparisonReport& rep, std::size_t k) {
    json j{{"k", k},
           {"case", rep.case_id},
           {"closed_kind", rep.closed_kind},
           {"sampler_kind", rep.sampler_kind},
           {"emptiness_agree", rep.emptiness_agree},
           {"shape_agree", rep.shape_agree},
           {"support_discrepancy", round_sig12(rep.support_discrepancy)},
           {"pass", rep.pass}};
    j["hausdorff"] = rep.hausdorff < 0.0 ? json(nullptr) : json(round_sig12(rep.hausdorff));
    j["endpoint_error"] =
        rep.endpoint_error < 0.0 ? json(nullptr) : json(round_sig12(rep.endpoint_error));
    return j;
}

inline CmdResult cmd_compare(const JobSpec& spec) {
    if (!spec.model) return {2, "compare requires a model (--n --m --alpha --beta)\n"};
    const JordanScalarModel& model = *spec.model;
    const ComplexMatrix t = materialize(model);

    // The sampler's outer-approximation excess grows like 1/resolution on
    // faces and like 1/resolution^2 at segment endpoints, so the default
    // agreement gates (2e-3 and 1e-6 at resolution 3600) widen accordingly
    // for coarser grids. --tol overrides the region gate outright.
    const double coarse = std::max(1.0, 3600.0 / static_cast<double>(spec.resolution));
    const double region_tol = spec.tol > 0.0 ? spec.tol : 2e-3 * coarse;
    const double endpoint_tol = 1e-6 * coarse * coarse;

    bool all_pass = true;
    json out;
    if (spec.all_k) {
        const auto profiles = sample_support_all(t, spec.resolution);
        out = json::array();
        for (std::size_t k = 1; k <= model.dim(); ++k) {
            const auto rep = compare_profile(model, k, profiles[k - 1], spec.arc_steps, region_tol,
                                             endpoint_tol);
            all_pass = all_pass && rep.pass;
            out.push_back(comparison_to_json(rep, k));
        }
    } else {
        const auto rep = compare_profile(model, spec.k, sample_support(t, spec.k, spec.resolution),
                                         spec.arc_steps, region_tol, endpoint_tol);
        all_pass = rep.pass;
        out = comparison_to_json(rep, spec.k);
    }
    return {all_pass ? 0 : 4, out.dump(2) + "\n"};
}

inline CmdResult cmd_plot(const JobSpec& spec) {
    if (!spec.model && !spec.matrix) return {2, "plot requires a model or --matrix-file\n"};

    std::optional<RegionDescriptor> desc;
    if (spec.model) desc = classify(*spec.model, spec.k);

    const ComplexMatrix t = spec.matrix ? *spec.matrix : materialize(*spec.model);
    const auto profile = sample_support(t, spec.k, spec.resolution);
    const auto sampled = outer_region(profile);

    if (spec.format == "json") {
        // geometry instead of a picture: the discretized closed-form region
        // (when a model is given) and the sampled outer region
        json out;
        if (desc)
            out["closed"] = desc->is_empty() ? region_to_json(make_empty_region())
                                             : region_to_json(discretize(*desc, spec.arc_steps));
        out["sampler"] = region_to_json(sampled);
        return {0, out.dump(2) + "\n"};
    }

    // Geometry bounding box, then 10% margin.
    std::vector<Point2> geom;
    if (desc && !desc->is_empty())
        for (const auto& v : discretize(*desc, 256).vertices) geom.push_back(v);
    if (!sampled.is_empty())
        for (const auto& v : sampled.vertices) geom.push_back(v);
    if (desc) {
        geom.push_back(detail::world_pt(*desc, {0.0, 0.0}));
        geom.push_back(detail::world_pt(*desc, {desc->r, 0.0}));
    }
    if (geom.empty()) geom.push_back({0.0, 0.0});

    svg::Figure fig;
    fig.min_x = fig.max_x = geom[0].x;
    fig.min_y = fig.max_y = geom[0].y;
    for (const auto& p : geom) {
        fig.min_x = std::min(fig.min_x, p.x);
        fig.max_x = std::max(fig.max_x, p.x);
        fig.min_y = std::min(fig.min_y, p.y);
        fig.max_y = std::max(fig.max_y, p.y);
    }
    double mg = 0.10 * std::max({fig.width(), fig.height(), 0.5});
    if (spec.show_sets) mg = std::max(mg, 0.30 * std::max(fig.width(), fig.height()));
    fig.min_x -= mg;
    fig.max_x += mg;
    fig.min_y -= mg;
    fig.max_y += mg;

    // Grid on integer multiples of 0.2, axes slightly darker.
    const double gw = 0.35 * fig.stroke();
    for (double x = std::ceil(fig.min_x / 0.2) * 0.2; x <= fig.max_x; x += 0.2) {
        const bool axis = std::abs(x) < 1e-12;
        fig.line({x, fig.min_y}, {x, fig.max_y}, axis ? "#999999" : "#dddddd", axis ? 2 * gw : gw);
    }
    for (double y = std::ceil(fig.min_y / 0.2) * 0.2; y <= fig.max_y; y += 0.2) {
        const bool axis = std::abs(y) < 1e-12;
        fig.line({fig.min_x, y}, {fig.max_x, y}, axis ? "#999999" : "#dddddd", axis ? 2 * gw : gw);
    }

    // Support lines, one per sampled theta.
    for (std::size_t i = 0; i < profile.thetas.size(); ++i) {
        Point2 a, b;
        if (svg::clip_support_line(fig, profile.thetas[i], profile.lambdas[i], a, b))
            fig.line(a, b, "#7799bb", 0.25 * fig.stroke(), 0.55);
    }

    if (desc) {
        if (spec.show_sets) {
            const double marker_r =
                0.5 * std::max(fig.width(), fig.height()) - 0.2 * mg;
            detail::draw_angle_sets(fig, *desc, marker_r);
        }
        detail::draw_closed_boundary(fig, *desc, "#bb2222");
    }

    return {0, fig.render()};
}

}  // namespace hrnr
