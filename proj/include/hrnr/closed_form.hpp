#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hrnr/core_linalg.hpp"
#include "hrnr/halfplane_geometry.hpp"

namespace hrnr {

/// arccos with the argument clamped into [-1, 1]. Excursions beyond 1e-12
/// are logic errors: the angle definitions guard the domain analytically and
/// only rounding may violate it.
inline double arccos_clamped(double v) {
    if (v > 1.0) {
        if (v > 1.0 + 1e-12) throw std::logic_error("arccos_clamped: argument > 1 beyond rounding");
        v = 1.0;
    } else if (v < -1.0) {
        if (v < -1.0 - 1e-12) throw std::logic_error("arccos_clamped: argument < -1 beyond rounding");
        v = -1.0;
    }
    return std::acos(v);
}

/// The derived angles of the family: phi_k = k pi/(n+1),
/// psi_km = (k-m) pi/(n+1), and the auxiliary delta_k, eta_km that
/// parameterize the angle sets below.
struct AngleData {
    double phi_k = 0.0;
    double psi_km = 0.0;
    double delta_k = 0.0;
    double eta_km = 0.0;
    double cos_phi_k = 0.0;
    double cos_psi_km = 0.0;
};

inline AngleData angle_data(const JordanScalarModel& model, std::size_t k) {
    if (k < 1 || k > model.dim())
        throw std::out_of_range("angle_data: k out of range");
    const double n1 = static_cast<double>(model.n) + 1.0;
    const double kk = static_cast<double>(k);
    const double mm = static_cast<double>(model.m);

    AngleData a;
    a.phi_k = kk * pi / n1;
    a.psi_km = (kk - mm) * pi / n1;
    // cos is snapped to exact zero at the half-integer rows so that the
    // integer case conditions and the float comparisons cannot disagree.
    a.cos_phi_k = (2 * k == model.n + 1) ? 0.0 : std::cos(a.phi_k);
    a.cos_psi_km = (k > model.m && 2 * (k - model.m) == model.n + 1) ? 0.0 : std::cos(a.psi_km);

    const double r = model.radius();
    const bool nontrivial = model.beta != model.alpha;
    a.delta_k = (nontrivial && r >= std::abs(a.cos_phi_k))
                    ? arccos_clamped(a.cos_phi_k / r)
                    : 0.0;
    a.eta_km = (k > model.m && nontrivial && r >= std::abs(a.cos_psi_km))
                   ? arccos_clamped(a.cos_psi_km / r)
                   : 0.0;
    return a;
}

/// Subset of the circle of directions: full, empty, or an arc given by
/// center and half-width. Open arcs exclude their endpoints (the set C_km
/// below is half-open at eta).
struct AngleSet {
    enum class Kind { empty, full, arc };
    Kind kind = Kind::empty;
    double center = 0.0;
    double half_width = 0.0;
    bool closed = true;

    bool contains(double theta) const {
        if (kind == Kind::empty) return false;
        if (kind == Kind::full) return true;
        double d = wrap_angle(theta - center);
        if (d > pi) d = 2.0 * pi - d;
        return closed ? d <= half_width : d < half_width;
    }

    static AngleSet empty_set() { return {}; }
    static AngleSet full_set() { return {Kind::full, 0.0, 0.0, true}; }
    static AngleSet arc(double center, double half_width, bool closed) {
        return {Kind::arc, wrap_angle(center), half_width, closed};
    }
};

/// D_k = {theta : |beta-alpha| cos(theta) <= cos(phi_k)}: the closed arc
/// [delta_k, 2 pi - delta_k] when delta_k > 0, otherwise full for
/// k <= (n+1)/2 and empty beyond.
inline AngleSet set_Dk(const JordanScalarModel& model, std::size_t k) {
    const AngleData a = angle_data(model, k);
    if (a.delta_k > 0.0) return AngleSet::arc(pi, pi - a.delta_k, true);
    if (2 * k <= model.n + 1) return AngleSet::full_set();
    return AngleSet::empty_set();
}

/// C_km = {theta : |beta-alpha| cos(theta) > cos(psi_km)} for k > m, empty
/// for k <= m: the half-open arc [0, eta) + (2 pi - eta, 2 pi] when
/// eta_km > 0, otherwise full or empty depending on the sign of cos(psi_km).
inline AngleSet set_Ckm(const JordanScalarModel& model, std::size_t k) {
    if (k <= model.m) return AngleSet::empty_set();
    const AngleData a = angle_data(model, k);
    if (a.eta_km > 0.0) return AngleSet::arc(0.0, a.eta_km, false);
    if (a.cos_psi_km < 0.0) return AngleSet::full_set();
    return AngleSet::empty_set();
}

/// Membership in the cone R_{r,k} with apex r on the real axis and
/// half-angle delta_k opening toward -infinity:
/// x <= r and x cos(delta) +/- y sin(delta) <= r cos(delta).
/// The sine-scaled pair alone is equivalent only for delta < pi/2; the
/// x <= r clause carries the definition to all of (0, pi).
inline bool in_cone(double x, double y, double r, double delta_k) {
    if (!(delta_k > 0.0 && delta_k < pi))
        throw std::invalid_argument("in_cone: delta_k must lie in (0, pi)");
    const double c = std::cos(delta_k);
    const double s = std::sin(delta_k);
    const double rc = r * c;
    return x <= r && x * c + y * s <= rc && x * c - y * s <= rc;
}

/// One row of the seven-case range table, with everything needed to test
/// membership and to rebuild the region geometry. All lengths live in the
/// normalized frame (Jordan eigenvalue at 0, scalar eigenvalue at r >= 0 on
/// the real axis); world points are alpha + e^{i psi} z.
struct RegionDescriptor {
    int case_id = 0;  // 1..7
    std::size_t n = 0, m = 0, k = 0;
    complex_t alpha{0.0, 0.0};
    complex_t beta{0.0, 0.0};
    double psi = 0.0;
    double r = 0.0;  // |beta - alpha|
    AngleData angles;
    AngleSet dk;
    AngleSet ckm;
    double segment_hi = 0.0;  // cases 4-5: segment [0, segment_hi]

    bool is_empty() const { return case_id == 7; }

    complex_t to_world(complex_t z) const { return alpha + std::polar(1.0, psi) * z; }
    complex_t to_normalized(complex_t w) const { return std::polar(1.0, -psi) * (w - alpha); }
};

/// Classify (model, k) into the unique row of the range table. Half-row
/// conditions (k = (n+1)/2 and k <= n/2) are integer comparisons; the
/// |beta-alpha| versus cosine comparisons are floating point with rounding
/// ties (1e-12 relative) resolved toward the closed inequality, so that
/// radii meant to sit exactly on a row boundary classify onto it even when
/// the two cosines round differently.
inline RegionDescriptor classify(const JordanScalarModel& model, std::size_t k) {
    const AngleData a = angle_data(model, k);
    const double tie = 1e-12 * std::max(1.0, model.radius());
    RegionDescriptor d;
    d.n = model.n;
    d.m = model.m;
    d.k = k;
    d.alpha = model.alpha;
    d.beta = model.beta;
    d.psi = model.psi;
    d.r = model.radius();
    d.angles = a;
    d.dk = set_Dk(model, k);
    d.ckm = set_Ckm(model, k);

    if (2 * k <= model.n) {
        if (d.r <= a.cos_phi_k + tie) d.case_id = 1;
        else if (k <= model.m) d.case_id = 2;
        else d.case_id = 3;
    } else if (2 * k == model.n + 1) {
        if (k <= model.m || d.r <= a.cos_psi_km + tie) {
            d.case_id = 4;
            d.segment_hi = d.r;
        } else {
            d.case_id = 5;
            d.segment_hi = a.cos_psi_km;
        }
    } else {
        if (k <= model.m || d.r <= a.cos_psi_km + tie) d.case_id = 6;
        else d.case_id = 7;
    }
    return d;
}

/// Exact membership test in the descriptor's region (closed sets; boundary
/// counts as inside). tol is the working-precision fuzz applied to each
/// comparison; the default keeps frame changes from flipping boundary
/// points.
inline bool region_contains(const RegionDescriptor& desc, complex_t mu, double tol = -1.0) {
    if (tol < 0.0) tol = 1e-12 * std::max(1.0, desc.r);
    const complex_t z = desc.to_normalized(mu);
    const double x = z.real();
    const double y = z.imag();
    const double az = std::abs(z);
    const AngleData& a = desc.angles;

    auto cone_with_tol = [&](double cr) {
        // the R_{r,k} test, all three inequalities slackened by tol
        if (!(a.delta_k > 0.0 && a.delta_k < pi / 2.0))
            throw std::logic_error("region_contains: cone invoked outside delta in (0, pi/2)");
        const double c = std::cos(a.delta_k);
        const double s = std::sin(a.delta_k);
        return x <= cr + tol && x * c + y * s <= cr * c + tol && x * c - y * s <= cr * c + tol;
    };
    auto on_segment = [&](double hi) {
        const double cx = std::clamp(x, 0.0, hi);
        return std::hypot(x - cx, y) <= tol;
    };

    switch (desc.case_id) {
        case 1:
            return az <= a.cos_phi_k + tol;
        case 2:
            if (az <= a.cos_phi_k + tol) return true;
            return !desc.dk.contains(arg_two_pi(z)) && cone_with_tol(desc.r);
        case 3:
            if (az <= a.cos_phi_k + tol) return true;
            return !desc.dk.contains(arg_two_pi(z)) && cone_with_tol(desc.r) &&
                   az <= a.cos_psi_km + tol;
        case 4:
        case 5:
            return on_segment(desc.segment_hi);
        case 6:
            return std::abs(z - complex_t{desc.r, 0.0}) <= tol;
        case 7:
            return false;
        default:
            throw std::logic_error("region_contains: invalid descriptor");
    }
}

/// The closed-form support data lambda_k(Re e^{i theta} T0) of the
/// normalized model: cos(psi_km) on C_km, cos(phi_k) on D_k (only reachable
/// for k <= n), and |beta-alpha| cos(theta) in between.
inline double lambda_k_closed(const JordanScalarModel& model, std::size_t k, double theta) {
    const AngleData a = angle_data(model, k);
    const double th = wrap_angle(theta);
    const AngleSet ckm = set_Ckm(model, k);
    if (ckm.contains(th)) return a.cos_psi_km;
    if (k <= model.n) {
        const AngleSet dk = set_Dk(model, k);
        if (dk.contains(th)) return a.cos_phi_k;
    }
    return model.radius() * std::cos(th);
}

/// Support data of the world-frame matrix T = alpha I + e^{i psi} T0:
/// lambda_k(Re e^{i theta} T) = Re(e^{i theta} alpha) + lambda_k0(theta+psi).
inline double lambda_k_world(const JordanScalarModel& model, std::size_t k, double theta) {
    return (std::polar(1.0, theta) * model.alpha).real() +
           lambda_k_closed(model, k, theta + model.psi);
}

namespace detail {

inline void append_circle_arc(std::vector<Point2>& pts, double radius, double t0, double t1,
                              std::size_t steps, bool include_last) {
    const std::size_t nseg = std::max<std::size_t>(steps, 2);
    for (std::size_t i = 0; i <= nseg; ++i) {
        if (i == nseg && !include_last) break;
        const double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(nseg);
        pts.push_back({radius * std::cos(t), radius * std::sin(t)});
    }
}

}  // namespace detail

/// Inscribed-polygon discretization of a nonempty descriptor, mapped to the
/// world frame. Vertices lie on the exact boundary, so the polygon sits
/// inside the true region, within Hausdorff distance
/// cos(phi_k) * (pi / arc_steps)^2 of it. Cases 4-6 come out verbatim as
/// segment/point regions.
inline ConvexRegion discretize(const RegionDescriptor& desc, std::size_t arc_steps = 720) {
    if (desc.is_empty())
        throw std::invalid_argument("discretize: empty descriptor");
    if (arc_steps < 8)
        throw std::invalid_argument("discretize: arc_steps must be >= 8");

    auto world = [&](Point2 z) {
        const complex_t w = desc.to_world(complex_t{z.x, z.y});
        return Point2{w.real(), w.imag()};
    };

    const AngleData& a = desc.angles;
    std::vector<Point2> zs;

    switch (desc.case_id) {
        case 1: {
            detail::append_circle_arc(zs, a.cos_phi_k, 0.0, 2.0 * pi, arc_steps, false);
            break;
        }
        case 2:
        case 3: {
            const double delta = a.delta_k;
            const double rr = desc.r;
            const bool capped = (desc.case_id == 3) && (a.cos_psi_km < rr);
            if (capped && a.cos_psi_km <= a.cos_phi_k + 1e-15) {
                // Cap circle coincides with the small circle (m = 0 style
                // degeneracy): the region is the plain disk.
                detail::append_circle_arc(zs, a.cos_phi_k, 0.0, 2.0 * pi, arc_steps, false);
                break;
            }
            const double span = 2.0 * pi - 2.0 * delta;
            const std::size_t main_steps = std::max<std::size_t>(
                8, static_cast<std::size_t>(std::ceil(static_cast<double>(arc_steps) * span / (2.0 * pi))));
            detail::append_circle_arc(zs, a.cos_phi_k, delta, 2.0 * pi - delta, main_steps, true);
            if (!capped) {
                zs.push_back({rr, 0.0});
            } else {
                // Lower tangent leaves the small circle at
                // cos(phi_k) e^{-i delta} and crosses the cap circle before
                // the apex; quadratic in the translated frame.
                const Point2 t_lo{a.cos_phi_k * std::cos(delta), -a.cos_phi_k * std::sin(delta)};
                const Point2 dir{rr - t_lo.x, -t_lo.y};
                const double qa = dot(dir, dir);
                const double qb = 2.0 * dot(t_lo, dir);
                const double qc = dot(t_lo, t_lo) - a.cos_psi_km * a.cos_psi_km;
                const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
                const double t = (-qb + std::sqrt(disc)) / (2.0 * qa);
                const Point2 s_lo = t_lo + t * dir;
                const double sigma = std::atan2(-s_lo.y, s_lo.x);  // > 0
                zs.push_back(s_lo);
                const std::size_t cap_steps = std::max<std::size_t>(
                    2, static_cast<std::size_t>(
                           std::ceil(static_cast<double>(arc_steps) * (2.0 * sigma) / (2.0 * pi) *
                                     std::sqrt(a.cos_psi_km / a.cos_phi_k))));
                for (std::size_t i = 1; i < cap_steps; ++i) {
                    const double c = -sigma + 2.0 * sigma * static_cast<double>(i) / static_cast<double>(cap_steps);
                    zs.push_back({a.cos_psi_km * std::cos(c), a.cos_psi_km * std::sin(c)});
                }
                zs.push_back({s_lo.x, -s_lo.y});
            }
            break;
        }
        case 4:
        case 5: {
            if (desc.segment_hi <= 0.0)
                return make_point_region(world({0.0, 0.0}));
            return make_segment_region(world({0.0, 0.0}), world({desc.segment_hi, 0.0}));
        }
        case 6:
            return make_point_region(world({desc.r, 0.0}));
        default:
            throw std::logic_error("discretize: invalid descriptor");
    }

    std::vector<Point2> ws;
    ws.reserve(zs.size());
    for (const auto& z : zs) ws.push_back(world(z));
    return make_polygon_region(std::move(ws));
}

}  // namespace hrnr
