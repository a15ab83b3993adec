#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hrnr/core_linalg.hpp"

namespace hrnr {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }

/// Half-plane {x + iy : x cos(theta) - y sin(theta) <= offset}, i.e.
/// Re(e^{i theta} mu) <= offset. Outward normal (cos theta, -sin theta).
struct HalfPlane {
    double theta = 0.0;  // normalized into [0, 2*pi)
    double offset = 0.0;

    Point2 normal() const { return {std::cos(theta), -std::sin(theta)}; }
};

inline HalfPlane make_halfplane(double theta, double offset) {
    if (!std::isfinite(theta) || !std::isfinite(offset))
        throw std::invalid_argument("make_halfplane: non-finite parameter");
    return HalfPlane{wrap_angle(theta), offset};
}

enum class RegionKind { polygon, segment, point, empty };

/// Intersection of half-planes, possibly degenerate. Polygons are strictly
/// convex and counterclockwise; all kinds are closed sets.
struct ConvexRegion {
    RegionKind kind = RegionKind::empty;
    std::vector<Point2> vertices;  // CCW polygon / 2 endpoints / 1 point / none

    bool is_empty() const { return kind == RegionKind::empty; }
};

inline ConvexRegion make_empty_region() { return ConvexRegion{}; }

inline ConvexRegion make_point_region(Point2 p) {
    return ConvexRegion{RegionKind::point, {p}};
}

inline ConvexRegion make_segment_region(Point2 a, Point2 b) {
    if (dist(a, b) == 0.0) return make_point_region(a);
    return ConvexRegion{RegionKind::segment, {a, b}};
}

inline ConvexRegion make_polygon_region(std::vector<Point2> vertices) {
    if (vertices.size() < 3)
        throw std::invalid_argument("make_polygon_region: need >= 3 vertices");
    return ConvexRegion{RegionKind::polygon, std::move(vertices)};
}

/// Signalled when the given half-planes do not pin down a bounded set;
/// distinct from an empty intersection.
struct unbounded_intersection : std::runtime_error {
    explicit unbounded_intersection(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct LpResult {
    bool feasible = false;
    Point2 x{};
};

/// Incremental randomized 2-variable LP (Seidel): maximize dot(c, x)
/// subject to dot(n_i, x) <= b_i, inside a bounding box of half-side box_r.
/// Ties along a face are broken by the perpendicular of c, which makes the
/// returned optimum a deterministic vertex.
inline LpResult seidel_lp(const std::vector<Point2>& normals, const std::vector<double>& bs,
                          Point2 c, double box_r, double feas_eps) {
    const std::size_t n = normals.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937 rng(0x9e3779b9u);
    std::shuffle(order.begin(), order.end(), rng);

    const Point2 cperp{-c.y, c.x};

    Point2 x{};
    bool first = true;
    for (double sx : {-1.0, 1.0})
        for (double sy : {-1.0, 1.0}) {
            const Point2 v{sx * box_r, sy * box_r};
            if (first || dot(c, v) > dot(c, x) ||
                (dot(c, v) == dot(c, x) && dot(cperp, v) > dot(cperp, x))) {
                x = v;
                first = false;
            }
        }

    std::vector<std::size_t> active;
    active.reserve(n);

    for (std::size_t idx = 0; idx < n; ++idx) {
        const std::size_t i = order[idx];
        if (dot(normals[i], x) <= bs[i] + feas_eps) {
            active.push_back(i);
            continue;
        }
        // The optimum of the enlarged set lies on this constraint's line.
        const Point2 u = normals[i];
        const double b = bs[i];
        const Point2 p0 = (b / dot(u, u)) * u;
        const Point2 d{-u.y, u.x};

        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        bool infeasible = false;

        auto clip_line = [&](Point2 uj, double bj) {
            const double coef = dot(uj, d);
            const double rhs = bj - dot(uj, p0);
            if (std::abs(coef) < 1e-14) {
                if (rhs < -feas_eps) infeasible = true;
                return;
            }
            const double t = rhs / coef;
            if (coef > 0.0) hi = std::min(hi, t);
            else lo = std::max(lo, t);
        };

        clip_line({1.0, 0.0}, box_r);
        clip_line({-1.0, 0.0}, box_r);
        clip_line({0.0, 1.0}, box_r);
        clip_line({0.0, -1.0}, box_r);
        for (std::size_t j : active) {
            if (infeasible) break;
            clip_line(normals[j], bs[j]);
        }
        if (infeasible || lo > hi + feas_eps) return {false, {}};

        const double along = dot(c, d);
        double t;
        if (along > 1e-14) t = hi;
        else if (along < -1e-14) t = lo;
        else t = (dot(cperp, d) >= 0.0) ? hi : lo;
        x = p0 + t * d;
        active.push_back(i);
    }
    return {true, x};
}

inline double polygon_area(const std::vector<Point2>& v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

inline Point2 intersect_lines(Point2 u1, double b1, Point2 u2, double b2, bool& ok) {
    const double det = cross(u1, u2);
    if (std::abs(det) < 1e-15) {
        ok = false;
        return {};
    }
    ok = true;
    return {(b1 * u2.y - b2 * u1.y) / det, (u1.x * b2 - u2.x * b1) / det};
}

}  // namespace detail

/// Tolerances of intersect_halfplanes; the length-like ones are relative to
/// scale = max(1, max |offset|).
struct IntersectTolerances {
    double angular = 1e-12;      // plane deduplication window (radians)
    double degenerate = 1e-9;    // point/segment collapse length, times scale
    double feasibility = 1e-11;  // LP feasibility slack, times scale
};

/// Exact intersection of the given half-planes, classified as polygon,
/// segment, point or empty.
///
/// Requires at least 3 planes whose directions positively span the circle
/// (max angular gap < pi); otherwise the set may be unbounded and
/// unbounded_intersection is thrown. Near-parallel planes are deduplicated
/// keeping the tighter offset. A feasible set of extent below the
/// degenerate threshold in all directions collapses to a point, in one
/// direction to a segment.
inline ConvexRegion intersect_halfplanes(const std::vector<HalfPlane>& planes,
                                         const IntersectTolerances& tols = {}) {
    if (planes.size() < 3)
        throw std::invalid_argument("intersect_halfplanes: need at least 3 half-planes");

    // Sort by direction, keep the tightest plane per direction.
    std::vector<HalfPlane> dedup;
    {
        std::vector<HalfPlane> sorted(planes);
        for (auto& p : sorted) p.theta = wrap_angle(p.theta);
        std::sort(sorted.begin(), sorted.end(),
                  [](const HalfPlane& a, const HalfPlane& b) { return a.theta < b.theta; });
        dedup.reserve(sorted.size());
        for (const auto& p : sorted) {
            if (!dedup.empty() && p.theta - dedup.back().theta <= tols.angular)
                dedup.back().offset = std::min(dedup.back().offset, p.offset);
            else
                dedup.push_back(p);
        }
        if (dedup.size() >= 2 &&
            (dedup.front().theta + 2.0 * pi) - dedup.back().theta <= tols.angular) {
            dedup.front().offset = std::min(dedup.front().offset, dedup.back().offset);
            dedup.pop_back();
        }
    }

    double max_gap = 0.0;
    for (std::size_t i = 0; i + 1 < dedup.size(); ++i)
        max_gap = std::max(max_gap, dedup[i + 1].theta - dedup[i].theta);
    if (dedup.size() >= 2)
        max_gap = std::max(max_gap, dedup.front().theta + 2.0 * pi - dedup.back().theta);
    if (dedup.size() < 3 || max_gap >= pi - 1e-12)
        throw unbounded_intersection(
            "intersect_halfplanes: directions do not positively span the circle");

    double scale = 1.0;
    for (const auto& p : dedup) scale = std::max(scale, std::abs(p.offset));
    const double box_r = 10.0 * scale;
    const double feas_eps = tols.feasibility * scale;
    const double degenerate_len = tols.degenerate * scale;

    std::vector<Point2> normals(dedup.size());
    std::vector<double> offsets(dedup.size());
    for (std::size_t i = 0; i < dedup.size(); ++i) {
        normals[i] = dedup[i].normal();
        offsets[i] = dedup[i].offset;
    }

    // Extreme points in 8 compass directions; the first LP decides
    // feasibility (they all agree on it).
    const double rt = 1.0 / std::sqrt(2.0);
    const Point2 dirs[8] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                            {rt, rt}, {rt, -rt}, {-rt, rt}, {-rt, -rt}};
    std::vector<Point2> extremes;
    extremes.reserve(8);
    for (const auto& d : dirs) {
        auto res = detail::seidel_lp(normals, offsets, d, box_r, feas_eps);
        if (!res.feasible) return make_empty_region();
        extremes.push_back(res.x);
    }

    double diam = 0.0;
    std::size_t ia = 0, ib = 0;
    for (std::size_t i = 0; i < extremes.size(); ++i)
        for (std::size_t j = i + 1; j < extremes.size(); ++j) {
            const double d = dist(extremes[i], extremes[j]);
            if (d > diam) {
                diam = d;
                ia = i;
                ib = j;
            }
        }
    if (diam <= degenerate_len) {
        Point2 center{};
        for (const auto& p : extremes) center = center + p;
        return make_point_region((1.0 / static_cast<double>(extremes.size())) * center);
    }

    // All extremes collinear: the feasible set is a segment along that line.
    const Point2 axis = (1.0 / diam) * (extremes[ib] - extremes[ia]);
    double width = 0.0;
    for (const auto& p : extremes)
        width = std::max(width, std::abs(cross(axis, p - extremes[ia])));
    if (width <= degenerate_len) {
        auto lo = detail::seidel_lp(normals, offsets, {-axis.x, -axis.y}, box_r, feas_eps);
        auto hi = detail::seidel_lp(normals, offsets, axis, box_r, feas_eps);
        Point2 a = lo.x, b = hi.x;
        if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
        return make_segment_region(a, b);
    }

    // Full-dimensional: from an interior point, the convex hull of the dual
    // points n_i / slack_i lists the non-redundant planes in cyclic order;
    // adjacent pairs meet in the polygon's vertices.
    Point2 inner{};
    for (const auto& p : extremes) inner = inner + p;
    inner = (1.0 / static_cast<double>(extremes.size())) * inner;

    std::vector<Point2> dual;
    std::vector<std::size_t> plane_of_dual;
    dual.reserve(dedup.size());
    for (std::size_t i = 0; i < dedup.size(); ++i) {
        const double slack = offsets[i] - dot(normals[i], inner);
        if (slack <= 0.0) continue;  // cannot happen for a strict interior point
        dual.push_back((1.0 / slack) * normals[i]);
        plane_of_dual.push_back(i);
    }

    std::vector<std::size_t> order(dual.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return dual[a].x < dual[b].x || (dual[a].x == dual[b].x && dual[a].y < dual[b].y);
    });

    std::vector<std::size_t> hull(2 * order.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        while (k >= 2 &&
               cross(dual[hull[k - 1]] - dual[hull[k - 2]], dual[order[i]] - dual[hull[k - 2]]) <= 0.0)
            --k;
        hull[k++] = order[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = order.size() - 1; i-- > 0;) {
        while (k >= lower &&
               cross(dual[hull[k - 1]] - dual[hull[k - 2]], dual[order[i]] - dual[hull[k - 2]]) <= 0.0)
            --k;
        hull[k++] = order[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);

    std::vector<Point2> verts;
    verts.reserve(hull.size());
    for (std::size_t h = 0; h < hull.size(); ++h) {
        const std::size_t i = plane_of_dual[hull[h]];
        const std::size_t j = plane_of_dual[hull[(h + 1) % hull.size()]];
        bool ok = false;
        const Point2 v = detail::intersect_lines(normals[i], offsets[i], normals[j], offsets[j], ok);
        if (ok) verts.push_back(v);
    }

    if (detail::polygon_area(verts) < 0.0) std::reverse(verts.begin(), verts.end());

    std::vector<Point2> clean;
    clean.reserve(verts.size());
    for (const auto& v : verts)
        if (clean.empty() || dist(clean.back(), v) > 1e-12 * scale) clean.push_back(v);
    while (clean.size() >= 2 && dist(clean.front(), clean.back()) <= 1e-12 * scale)
        clean.pop_back();

    if (clean.size() >= 3) {
        const double area = detail::polygon_area(clean);
        if (area > 1e-18 * scale * scale) return make_polygon_region(std::move(clean));
    }
    // Residual degenerate output (belt-and-suspenders; the LP pre-pass
    // normally catches these).
    if (clean.empty()) return make_point_region(inner);
    Point2 a = clean.front(), b = clean.front();
    for (const auto& v : clean)
        if (dist(v, a) > dist(b, a)) b = v;
    for (const auto& v : clean)
        if (dist(v, b) > dist(a, b)) a = v;
    if (dist(a, b) <= degenerate_len) return make_point_region(a);
    return make_segment_region(a, b);
}

/// Convex hull of a point set as a ConvexRegion: a CCW polygon, or a
/// segment/point when the input is (near-)degenerate.
inline ConvexRegion convex_hull_region(const std::vector<Point2>& points, double tol = 1e-12) {
    if (points.empty()) return make_empty_region();

    double diam = 0.0;
    Point2 pa = points[0], pb = points[0];
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (dist(points[i], points[j]) > diam) {
                diam = dist(points[i], points[j]);
                pa = points[i];
                pb = points[j];
            }
    if (diam <= tol) return make_point_region(points[0]);

    const Point2 axis = (1.0 / diam) * (pb - pa);
    double width = 0.0;
    for (const auto& p : points) width = std::max(width, std::abs(cross(axis, p - pa)));
    if (width <= tol) {
        double lo = 0.0, hi = 0.0;
        Point2 a = pa, b = pa;
        for (const auto& p : points) {
            const double t = dot(axis, p - pa);
            if (t < lo) { lo = t; a = p; }
            if (t > hi) { hi = t; b = p; }
        }
        return make_segment_region(a, b);
    }

    std::vector<Point2> pts(points);
    std::sort(pts.begin(), pts.end(), [](Point2 u, Point2 v) {
        return u.x < v.x || (u.x == v.x && u.y < v.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point2 u, Point2 v) { return u.x == v.x && u.y == v.y; }),
              pts.end());
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return make_polygon_region(std::move(hull));
}

/// Distance from a point to a closed convex region; 0 inside, infinity for
/// the empty region.
inline double distance_to_region(const ConvexRegion& region, Point2 p) {
    switch (region.kind) {
        case RegionKind::empty:
            return std::numeric_limits<double>::infinity();
        case RegionKind::point:
            return dist(p, region.vertices[0]);
        case RegionKind::segment:
        case RegionKind::polygon: {
            const auto& v = region.vertices;
            if (region.kind == RegionKind::polygon) {
                bool inside = true;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    const Point2 a = v[i];
                    const Point2 b = v[(i + 1) % v.size()];
                    if (cross(b - a, p - a) < 0.0) {
                        inside = false;
                        break;
                    }
                }
                if (inside) return 0.0;
            }
            double best = std::numeric_limits<double>::infinity();
            const std::size_t edges = (region.kind == RegionKind::segment) ? 1 : v.size();
            for (std::size_t i = 0; i < edges; ++i) {
                const Point2 a = v[i];
                const Point2 b = v[(i + 1) % v.size()];
                const Point2 ab = b - a;
                const double len2 = dot(ab, ab);
                double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
                t = std::clamp(t, 0.0, 1.0);
                best = std::min(best, dist(p, a + t * ab));
            }
            return best;
        }
    }
    return std::numeric_limits<double>::infinity();
}

/// True iff mu lies within distance tol of the closed region.
inline bool contains(const ConvexRegion& region, complex_t mu, double tol = 0.0) {
    if (region.is_empty()) return false;
    return distance_to_region(region, {mu.real(), mu.imag()}) <= tol;
}

/// Signed distance: negative inside a polygon (distance to its boundary),
/// positive outside; plain distance for lower-dimensional regions.
inline double signed_distance_to_region(const ConvexRegion& region, Point2 p) {
    const double d = distance_to_region(region, p);
    if (d > 0.0 || region.kind != RegionKind::polygon) return d;
    double inner = std::numeric_limits<double>::infinity();
    const auto& v = region.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 a = v[i];
        const Point2 b = v[(i + 1) % v.size()];
        const Point2 ab = b - a;
        const double len = norm(ab);
        if (len == 0.0) continue;
        inner = std::min(inner, std::abs(cross(ab, p - a)) / len);
    }
    return -inner;
}

/// Maximum of x cos(theta) - y sin(theta) over the region (the support value
/// in the half-plane convention above). Empty region rejected.
inline double support_value(const ConvexRegion& region, double theta) {
    if (region.is_empty())
        throw std::invalid_argument("support_value: empty region");
    const Point2 u{std::cos(theta), -std::sin(theta)};
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : region.vertices) best = std::max(best, dot(u, v));
    return best;
}

namespace detail {

/// Piecewise description of a region's support function: sorted breakpoint
/// angles in [0, 2*pi) plus the vertex attaining the maximum on the arc that
/// starts at each breakpoint. Directions here are standard (cos a, sin a).
struct SupportFan {
    std::vector<double> angles;
    std::vector<Point2> argmax;
};

inline SupportFan support_fan(const ConvexRegion& region) {
    SupportFan fan;
    const auto& v = region.vertices;
    std::vector<std::pair<double, Point2>> arcs;
    if (region.kind == RegionKind::point) {
        arcs.emplace_back(0.0, v[0]);
    } else if (region.kind == RegionKind::segment) {
        const Point2 d = v[1] - v[0];
        const double a = std::atan2(d.y, d.x);
        arcs.emplace_back(wrap_angle(a - pi / 2.0), v[1]);
        arcs.emplace_back(wrap_angle(a + pi / 2.0), v[0]);
    } else {
        // CCW polygon: vertex i+1 attains the max between the outward
        // normals of edges i and i+1.
        const std::size_t n = v.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Point2 e = v[(i + 1) % n] - v[i];
            arcs.emplace_back(wrap_angle(std::atan2(-e.x, e.y)), v[(i + 1) % n]);
        }
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& arc : arcs) {
        fan.angles.push_back(arc.first);
        fan.argmax.push_back(arc.second);
    }
    return fan;
}

inline Point2 fan_vertex_at(const SupportFan& fan, double angle) {
    auto it = std::upper_bound(fan.angles.begin(), fan.angles.end(), angle);
    const std::size_t idx = (it == fan.angles.begin())
                                ? fan.angles.size() - 1
                                : static_cast<std::size_t>(it - fan.angles.begin()) - 1;
    return fan.argmax[idx];
}

}  // namespace detail

/// Symmetric Hausdorff distance between nonempty convex regions, computed
/// exactly as the sup-norm of the support function difference.
inline double hausdorff_distance(const ConvexRegion& a, const ConvexRegion& b) {
    if (a.is_empty() || b.is_empty())
        throw std::invalid_argument("hausdorff_distance: empty region (compare emptiness separately)");

    const auto fan_a = detail::support_fan(a);
    const auto fan_b = detail::support_fan(b);

    std::vector<double> cuts;
    cuts.reserve(fan_a.angles.size() + fan_b.angles.size());
    cuts.insert(cuts.end(), fan_a.angles.begin(), fan_a.angles.end());
    cuts.insert(cuts.end(), fan_b.angles.begin(), fan_b.angles.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.empty()) cuts.push_back(0.0);

    double best = 0.0;
    const std::size_t m = cuts.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double lo = cuts[i];
        const double hi = (i + 1 < m) ? cuts[i + 1] : cuts[0] + 2.0 * pi;
        const double mid = wrap_angle(0.5 * (lo + hi));
        const Point2 d = detail::fan_vertex_at(fan_a, mid) - detail::fan_vertex_at(fan_b, mid);
        const double r = norm(d);
        if (r == 0.0) continue;
        // |h_a - h_b| = |r cos(phi - phi0)| on this arc; peaks at phi0 + k*pi.
        const double phi0 = std::atan2(d.y, d.x);
        auto value = [&](double phi) { return std::abs(r * std::cos(phi - phi0)); };
        double local = std::max(value(lo), value(hi));
        for (int kk = -1; kk <= 3; ++kk) {
            const double peak = phi0 + kk * pi;
            if (peak >= lo && peak <= hi) local = std::max(local, r);
        }
        best = std::max(best, local);
    }
    return best;
}

}  // namespace hrnr
