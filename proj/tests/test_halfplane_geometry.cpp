#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hrnr/halfplane_geometry.hpp"

using namespace hrnr;

namespace {

// Feasibility oracle on a dense grid: proves non-emptiness by exhibiting a
// point. (Emptiness claims below come with Farkas certificates instead.)
bool grid_feasible(const std::vector<HalfPlane>& planes, double extent, double step) {
    for (double x = -extent; x <= extent; x += step)
        for (double y = -extent; y <= extent; y += step) {
            bool ok = true;
            for (const auto& p : planes)
                if (x * std::cos(p.theta) - y * std::sin(p.theta) > p.offset) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
    return false;
}

double directed_hausdorff_brute(const ConvexRegion& a, const ConvexRegion& b) {
    double worst = 0.0;
    for (const auto& v : a.vertices) worst = std::max(worst, distance_to_region(b, v));
    return worst;
}

// For convex regions the distance function is convex, so the directed
// Hausdorff distance is attained at a vertex; this is an independent oracle
// for the support-function implementation.
double hausdorff_brute(const ConvexRegion& a, const ConvexRegion& b) {
    return std::max(directed_hausdorff_brute(a, b), directed_hausdorff_brute(b, a));
}

std::vector<HalfPlane> tangent_planes(const ConvexRegion& polygon) {
    std::vector<HalfPlane> planes;
    const auto& v = polygon.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 e = v[(i + 1) % v.size()] - v[i];
        const Point2 u{e.y / norm(e), -e.x / norm(e)};  // outward normal (CCW polygon)
        const double theta = wrap_angle(std::atan2(-u.y, u.x));
        planes.push_back(make_halfplane(theta, dot(u, v[i])));
    }
    return planes;
}

}  // namespace

TEST_CASE("axis-aligned square from four planes") {
    std::vector<HalfPlane> planes = {
        make_halfplane(0.0, 1.0), make_halfplane(pi / 2.0, 1.0),
        make_halfplane(pi, 1.0), make_halfplane(3.0 * pi / 2.0, 1.0)};
    const auto region = intersect_halfplanes(planes);
    REQUIRE(region.kind == RegionKind::polygon);
    REQUIRE(region.vertices.size() == 4);
    for (const auto& v : region.vertices) {
        CHECK(std::abs(std::abs(v.x) - 1.0) <= 1e-12);
        CHECK(std::abs(std::abs(v.y) - 1.0) <= 1e-12);
    }
    CHECK(contains(region, {0.0, 0.0}, 0.0));
    CHECK(contains(region, {1.0, 1.0}, 1e-12));
    CHECK_FALSE(contains(region, {1.2, 0.0}, 1e-6));
}

TEST_CASE("emptiness detected with a Farkas-certified configuration") {
    // u(0) + u(2pi/3) + u(4pi/3) = 0 while the offsets sum to -3 < 0, so
    // the three constraints cannot hold simultaneously.
    std::vector<HalfPlane> planes = {
        make_halfplane(0.0, -1.0), make_halfplane(2.0 * pi / 3.0, -1.0),
        make_halfplane(4.0 * pi / 3.0, -1.0)};
    {
        Point2 s{0, 0};
        for (const auto& p : planes) s = s + p.normal();
        REQUIRE(norm(s) <= 1e-15);
    }
    const auto region = intersect_halfplanes(planes);
    CHECK(region.kind == RegionKind::empty);
    CHECK_FALSE(contains(region, {0.0, 0.0}, 10.0));

    // Same directions with offsets {-1, 1, 1} leave a feasible triangle
    // (grid oracle); the plane at theta = 0 only pushes it to x <= -1.
    std::vector<HalfPlane> tri = {
        make_halfplane(0.0, -1.0), make_halfplane(2.0 * pi / 3.0, 1.0),
        make_halfplane(4.0 * pi / 3.0, 1.0)};
    REQUIRE(grid_feasible(tri, 3.0, 0.05));
    const auto tri_region = intersect_halfplanes(tri);
    REQUIRE(tri_region.kind == RegionKind::polygon);
    CHECK(contains(tri_region, {-1.5, 0.0}, 1e-9));
    for (const auto& v : tri_region.vertices) CHECK(v.x <= -1.0 + 1e-9);
}

TEST_CASE("forced equalities produce a point region") {
    const double c = 0.75;
    std::vector<HalfPlane> planes = {
        make_halfplane(0.0, c), make_halfplane(pi, -c),
        make_halfplane(pi / 2.0, 0.0), make_halfplane(3.0 * pi / 2.0, 0.0)};
    const auto region = intersect_halfplanes(planes);
    REQUIRE(region.kind == RegionKind::point);
    CHECK(std::abs(region.vertices[0].x - c) <= 1e-9);
    CHECK(std::abs(region.vertices[0].y) <= 1e-9);
}

TEST_CASE("degenerate segment region with exact endpoints") {
    // y pinched to 0, x in [-0.25, 2]
    std::vector<HalfPlane> planes = {
        make_halfplane(pi / 2.0, 0.0), make_halfplane(3.0 * pi / 2.0, 0.0),
        make_halfplane(0.0, 2.0), make_halfplane(pi, 0.25)};
    const auto region = intersect_halfplanes(planes);
    REQUIRE(region.kind == RegionKind::segment);
    CHECK(std::abs(region.vertices[0].x + 0.25) <= 1e-9);
    CHECK(std::abs(region.vertices[1].x - 2.0) <= 1e-9);
    CHECK(std::abs(region.vertices[0].y) <= 1e-9);
    CHECK(std::abs(region.vertices[1].y) <= 1e-9);
}

TEST_CASE("rejects too few planes and non-spanning directions") {
    CHECK_THROWS_AS(intersect_halfplanes({make_halfplane(0, 1), make_halfplane(pi, 1)}),
                    std::invalid_argument);
    // all normals in a half circle: unbounded
    CHECK_THROWS_AS(intersect_halfplanes({make_halfplane(0.0, 1.0), make_halfplane(0.4, 1.0),
                                          make_halfplane(0.8, 1.0), make_halfplane(1.2, 1.0)}),
                    unbounded_intersection);
    CHECK_THROWS_AS(intersect_halfplanes({make_halfplane(0.0, 1.0), make_halfplane(pi / 2, 1.0),
                                          make_halfplane(pi, 1.0)}),
                    unbounded_intersection);
}

TEST_CASE("vertices satisfy every constraint and extra planes only shrink") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> off(0.4, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<HalfPlane> planes;
        for (int i = 0; i < 12; ++i) planes.push_back(make_halfplane(angle(rng), off(rng)));
        // guarantee positive spanning
        for (int q = 0; q < 4; ++q) planes.push_back(make_halfplane(q * pi / 2.0, 2.0));

        const auto region = intersect_halfplanes(planes);
        REQUIRE_FALSE(region.is_empty());
        for (const auto& v : region.vertices)
            for (const auto& p : planes)
                CHECK(dot(p.normal(), v) <= p.offset + 1e-9);

        auto more = planes;
        more.push_back(make_halfplane(angle(rng), off(rng)));
        const auto smaller = intersect_halfplanes(more);
        if (!smaller.is_empty())
            for (const auto& v : smaller.vertices)
                CHECK(distance_to_region(region, v) <= 1e-9);
    }
}

TEST_CASE("support values never exceed the matching offsets") {
    std::vector<HalfPlane> planes;
    for (int i = 0; i < 40; ++i)
        planes.push_back(make_halfplane(2.0 * pi * i / 40.0, 1.0 + 0.3 * std::sin(3.0 * i)));
    const auto region = intersect_halfplanes(planes);
    for (const auto& p : planes)
        CHECK(support_value(region, p.theta) <= p.offset + 1e-9);
}

TEST_CASE("tangent planes of a polygon reproduce it") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Point2> pts;
        for (int i = 0; i < 12; ++i) pts.push_back({coord(rng), coord(rng)});
        const auto hull = convex_hull_region(pts);
        if (hull.kind != RegionKind::polygon) continue;
        const auto back = intersect_halfplanes(tangent_planes(hull));
        REQUIRE(back.kind == RegionKind::polygon);
        CHECK(hausdorff_distance(hull, back) <= 1e-9);
    }
}

TEST_CASE("contains handles degenerate kinds and tolerance bands") {
    CHECK_FALSE(contains(make_empty_region(), {0.0, 0.0}, 100.0));
    const auto seg = make_segment_region({0.0, 0.0}, {1.0, 0.0});
    CHECK(contains(seg, {0.5, 1e-9}, 1e-6));
    CHECK_FALSE(contains(seg, {0.5, 1e-3}, 1e-6));
    CHECK(contains(make_point_region({2.0, -1.0}), {2.0, -1.0}, 0.0));
}

TEST_CASE("hausdorff distances on known pairs") {
    std::vector<Point2> sq = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    const auto square = make_polygon_region(sq);
    CHECK(hausdorff_distance(square, square) == 0.0);

    std::vector<Point2> shifted;
    for (auto v : sq) shifted.push_back({v.x + 1.0, v.y});
    CHECK(hausdorff_distance(square, make_polygon_region(shifted)) == Catch::Approx(1.0).margin(1e-12));

    const auto seg = make_segment_region({0, 0}, {1, 0});
    const auto origin = make_point_region({0, 0});
    CHECK(hausdorff_distance(seg, origin) == Catch::Approx(1.0).margin(1e-12));
    CHECK_THROWS_AS(hausdorff_distance(square, make_empty_region()), std::invalid_argument);
}

TEST_CASE("support-function hausdorff matches the vertex oracle") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point2> pa, pb;
        for (int i = 0; i < 9; ++i) pa.push_back({coord(rng), coord(rng)});
        for (int i = 0; i < 7; ++i) pb.push_back({coord(rng), coord(rng)});
        const auto a = convex_hull_region(pa);
        const auto b = convex_hull_region(pb);
        CHECK(hausdorff_distance(a, b) == Catch::Approx(hausdorff_brute(a, b)).margin(1e-10));
    }
    // degenerate mixes
    const auto seg = make_segment_region({-1.0, 0.5}, {2.0, 0.5});
    const auto tri = make_polygon_region({{0, 0}, {1, 0}, {0.5, 1.5}});
    CHECK(hausdorff_distance(seg, tri) == Catch::Approx(hausdorff_brute(seg, tri)).margin(1e-10));
    const auto pt = make_point_region({0.3, 0.4});
    CHECK(hausdorff_distance(pt, tri) == Catch::Approx(hausdorff_brute(pt, tri)).margin(1e-10));
}

TEST_CASE("support_value on square, point and discretized disk") {
    const auto square = make_polygon_region({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    CHECK(support_value(square, 0.0) == Catch::Approx(1.0));

    const auto pt = make_point_region({0.7, -0.3});
    for (double theta : {0.0, 1.1, 3.9})
        CHECK(support_value(pt, theta) ==
              Catch::Approx(0.7 * std::cos(theta) + 0.3 * std::sin(theta)).margin(1e-14));

    const double r = 1.3;
    std::vector<Point2> disk;
    for (int i = 0; i < 720; ++i)
        disk.push_back({r * std::cos(2.0 * pi * i / 720.0), r * std::sin(2.0 * pi * i / 720.0)});
    const auto ball = make_polygon_region(disk);
    for (double theta : {0.2, 2.0, 4.7})
        CHECK(support_value(ball, theta) == Catch::Approx(r).margin(r * 1e-4));

    CHECK_THROWS_AS(support_value(make_empty_region(), 0.0), std::invalid_argument);
}

TEST_CASE("signed distance is negative inside polygons") {
    const auto square = make_polygon_region({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    CHECK(signed_distance_to_region(square, {0.0, 0.0}) == Catch::Approx(-1.0));
    CHECK(signed_distance_to_region(square, {0.9, 0.0}) == Catch::Approx(-0.1));
    CHECK(signed_distance_to_region(square, {2.0, 0.0}) == Catch::Approx(1.0));
    const auto seg = make_segment_region({0, 0}, {1, 0});
    CHECK(signed_distance_to_region(seg, {0.5, 0.2}) == Catch::Approx(0.2));
}

TEST_CASE("convex hull region classifies degenerate point sets") {
    CHECK(convex_hull_region({{1.0, 2.0}}).kind == RegionKind::point);
    const auto seg = convex_hull_region({{0, 0}, {1, 1}, {0.5, 0.5}, {0.25, 0.25}});
    REQUIRE(seg.kind == RegionKind::segment);
    CHECK(dist(seg.vertices[0], seg.vertices[1]) == Catch::Approx(std::sqrt(2.0)));
    const auto tri = convex_hull_region({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}});
    REQUIRE(tri.kind == RegionKind::polygon);
    CHECK(tri.vertices.size() == 3);
}

TEST_CASE("intersection matches the brute-force pairwise-vertex oracle") {
    // Reference: every vertex of a bounded nonempty intersection is the
    // crossing of two constraint lines that satisfies all constraints, so
    // hulling the feasible crossings reproduces the region.
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> off(0.2, 1.8);
    int compared = 0;
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<HalfPlane> planes;
        const int extra = 5 + trial % 24;
        for (int i = 0; i < extra; ++i) planes.push_back(make_halfplane(angle(rng), off(rng)));
        for (int q = 0; q < 4; ++q)
            planes.push_back(make_halfplane(q * pi / 2.0 + 0.3, off(rng) + 0.5));

        std::vector<Point2> feasible;
        for (std::size_t i = 0; i < planes.size(); ++i)
            for (std::size_t j = i + 1; j < planes.size(); ++j) {
                const Point2 ui = planes[i].normal(), uj = planes[j].normal();
                const double det = cross(ui, uj);
                if (std::abs(det) < 1e-12) continue;
                const Point2 v{(planes[i].offset * uj.y - planes[j].offset * ui.y) / det,
                               (ui.x * planes[j].offset - uj.x * planes[i].offset) / det};
                bool ok = true;
                for (const auto& p : planes)
                    if (dot(p.normal(), v) > p.offset + 1e-9) {
                        ok = false;
                        break;
                    }
                if (ok) feasible.push_back(v);
            }

        const auto region = intersect_halfplanes(planes);
        if (feasible.empty()) {
            CHECK(region.is_empty());
            continue;
        }
        const auto reference = convex_hull_region(feasible);
        REQUIRE_FALSE(region.is_empty());
        CHECK(hausdorff_distance(region, reference) <= 1e-8);
        ++compared;
    }
    CHECK(compared >= 25);
}
