#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hrnr/core_linalg.hpp"
#include "hrnr/halfplane_geometry.hpp"
#include "hrnr/hermitian_eigen.hpp"

namespace hrnr {

/// Sampled support data theta -> lambda_k(Re e^{i theta} T) on a uniform
/// grid over [0, 2*pi).
struct SupportProfile {
    std::size_t k = 1;
    std::vector<double> thetas;
    std::vector<double> lambdas;
};

namespace detail {

/// One eigensolve sweep over the angle grid, parallel over theta. Returns
/// the full spectra in grid order; eigensolver failures are rethrown with
/// the offending angle attached.
inline std::vector<Spectrum> spectra_over_grid(const ComplexMatrix& t, std::size_t resolution) {
    t.require_square("sample_support");
    if (resolution < 8)
        throw std::invalid_argument("sample_support: resolution must be >= 8");

    std::vector<Spectrum> spectra(resolution);
    std::vector<std::string> errors;

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(hw, std::max<std::size_t>(1, resolution / 64)));

    auto run_slice = [&](std::size_t lo, std::size_t hi, std::string& error) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double theta = 2.0 * pi * static_cast<double>(i) / static_cast<double>(resolution);
            try {
                spectra[i] = eigenvalues_hermitian(hermitian_part(t, theta));
            } catch (const std::exception& e) {
                error = "sample_support: eigensolver failed at theta = " +
                        std::to_string(theta) + ": " + e.what();
                return;
            }
        }
    };

    if (workers <= 1) {
        std::string error;
        run_slice(0, resolution, error);
        if (!error.empty()) throw std::runtime_error(error);
    } else {
        std::vector<std::thread> pool;
        errors.assign(workers, {});
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t lo = resolution * w / workers;
            const std::size_t hi = resolution * (w + 1) / workers;
            pool.emplace_back([&, lo, hi, w]() { run_slice(lo, hi, errors[w]); });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors)
            if (!e.empty()) throw std::runtime_error(e);
    }
    return spectra;
}

}  // namespace detail

/// Support profiles for every k = 1..dim from a single eigensolve sweep.
inline std::vector<SupportProfile> sample_support_all(const ComplexMatrix& t, std::size_t resolution) {
    const auto spectra = detail::spectra_over_grid(t, resolution);
    const std::size_t dim = t.rows();

    std::vector<SupportProfile> profiles(dim);
    for (std::size_t k = 1; k <= dim; ++k) {
        profiles[k - 1].k = k;
        profiles[k - 1].thetas.resize(resolution);
        profiles[k - 1].lambdas.resize(resolution);
    }
    for (std::size_t i = 0; i < resolution; ++i) {
        const double theta = 2.0 * pi * static_cast<double>(i) / static_cast<double>(resolution);
        for (std::size_t k = 1; k <= dim; ++k) {
            profiles[k - 1].thetas[i] = theta;
            profiles[k - 1].lambdas[i] = spectra[i].values[k - 1];
        }
    }
    return profiles;
}

inline SupportProfile sample_support(const ComplexMatrix& t, std::size_t k, std::size_t resolution) {
    t.require_square("sample_support");
    if (k < 1 || k > t.rows())
        throw std::out_of_range("sample_support: k out of range");
    auto profiles = sample_support_all(t, resolution);
    return std::move(profiles[k - 1]);
}

/// Intersection of the sampled half-planes; a superset of the true range
/// (finite subfamily of the constraints). The grid covers the circle, so an
/// unbounded result cannot happen and is reported as an internal error.
inline ConvexRegion outer_region(const SupportProfile& profile) {
    if (profile.thetas.size() != profile.lambdas.size() || profile.thetas.size() < 8)
        throw std::invalid_argument("outer_region: malformed profile");
    std::vector<HalfPlane> planes;
    planes.reserve(profile.thetas.size());
    for (std::size_t i = 0; i < profile.thetas.size(); ++i)
        planes.push_back(make_halfplane(profile.thetas[i], profile.lambdas[i]));
    try {
        return intersect_halfplanes(planes);
    } catch (const unbounded_intersection& e) {
        throw std::logic_error(std::string("outer_region: unbounded on a full grid: ") + e.what());
    }
}

enum class Membership { inside, outside, boundary_uncertain };

struct MemberReport {
    Membership verdict = Membership::boundary_uncertain;
    double max_violation = 0.0;  // max over theta of Re(e^{i theta} mu) - lambda_k
    double theta_at_max = 0.0;
};

namespace detail {

inline double support_violation(const ComplexMatrix& t, std::size_t k, complex_t mu, double theta) {
    const Spectrum s = eigenvalues_hermitian(hermitian_part(t, theta));
    return (std::polar(1.0, theta) * mu).real() - kth_eigenvalue(s, k);
}

}  // namespace detail

/// Membership against a precomputed profile (t is consulted only when
/// refine = true, for the extra eigensolves between grid points).
inline MemberReport member_profile(const ComplexMatrix& t, const SupportProfile& profile,
                                   complex_t mu, double tol = -1.0, bool refine = false) {
    const std::size_t n = profile.thetas.size();

    double scale = 1.0;
    for (double l : profile.lambdas) scale = std::max(scale, std::abs(l));
    if (tol < 0.0) tol = 1e-7 * scale;

    std::vector<double> g(n);
    MemberReport report;
    report.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = (std::polar(1.0, profile.thetas[i]) * mu).real() - profile.lambdas[i];
        if (g[i] > report.max_violation) {
            report.max_violation = g[i];
            report.theta_at_max = profile.thetas[i];
        }
    }

    if (refine) {
        // Constraint slack is Lipschitz in theta; only local grid maxima
        // that could cross the verdict threshold are worth sharpening.
        const double h = 2.0 * pi / static_cast<double>(n);
        const double lip = std::abs(mu) + scale;
        const double reach = lip * h;
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < n; ++i) {
            const double prev = g[(i + n - 1) % n];
            const double next = g[(i + 1) % n];
            if (g[i] >= prev && g[i] >= next && g[i] + reach >= -tol &&
                g[i] >= report.max_violation - reach)
                candidates.push_back(i);
        }
        for (std::size_t i : candidates) {
            double lo = profile.thetas[i] - h;
            double hi = profile.thetas[i] + h;
            double best_t = profile.thetas[i];
            double best_v = g[i];
            for (int round = 0; round < 10; ++round) {
                for (int j = 0; j <= 8; ++j) {
                    const double th = lo + (hi - lo) * j / 8.0;
                    const double v = detail::support_violation(t, profile.k, mu, th);
                    if (v > best_v) {
                        best_v = v;
                        best_t = th;
                    }
                }
                const double quarter = (hi - lo) / 4.0;
                lo = best_t - quarter;
                hi = best_t + quarter;
            }
            if (best_v > report.max_violation) {
                report.max_violation = best_v;
                report.theta_at_max = wrap_angle(best_t);
            }
        }
    }

    if (report.max_violation > tol) report.verdict = Membership::outside;
    else if (report.max_violation < -tol) report.verdict = Membership::inside;
    else report.verdict = Membership::boundary_uncertain;
    return report;
}

/// Membership via the half-plane inequalities at the sampled angles:
/// outside if some constraint is violated by more than tol, inside if every
/// constraint holds with slack above tol, boundary-uncertain otherwise.
/// tol < 0 selects the default 1e-7 * scale.
///
/// With refine = true the largest grid violations are sharpened by local
/// grid zooming (extra eigensolves between grid points). The default stays
/// off for reproducibility of the plain grid verdicts.
inline MemberReport member(const ComplexMatrix& t, std::size_t k, complex_t mu,
                           std::size_t resolution = 3600, double tol = -1.0, bool refine = false) {
    t.require_square("member");
    if (k < 1 || k > t.rows()) throw std::out_of_range("member: k out of range");
    return member_profile(t, sample_support(t, k, resolution), mu, tol, refine);
}

}  // namespace hrnr
