#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hrnr/core_linalg.hpp"
#include "hrnr/halfplane_geometry.hpp"
#include "hrnr/hermitian_eigen.hpp"

namespace hrnr {

namespace detail {

template <typename F>
void for_each_subset(std::size_t n, std::size_t size, F&& visit) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
        visit(idx);
        // next combination in lexicographic order
        std::size_t i = size;
        while (i-- > 0) {
            if (idx[i] != i + n - size) {
                ++idx[i];
                for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

}  // namespace detail

/// Signed margin of the normal-matrix range formula: the rank-k range of a
/// normal matrix with the given eigenvalues is the intersection of the
/// convex hulls of all (n-k+1)-subsets. Returns max over subsets of the
/// signed distance from probe to the subset hull, so probe is in the range
/// iff the margin is <= 0.
inline double normal_range_margin(const std::vector<complex_t>& eigs, std::size_t k,
                                  complex_t probe) {
    const std::size_t n = eigs.size();
    if (k < 1 || k > n) throw std::out_of_range("normal_range_margin: k out of range");
    if (n > 12) throw std::invalid_argument("normal_range_margin: more than 12 eigenvalues");

    const std::size_t size = n - k + 1;
    const Point2 p{probe.real(), probe.imag()};
    double margin = -std::numeric_limits<double>::infinity();
    detail::for_each_subset(n, size, [&](const std::vector<std::size_t>& idx) {
        std::vector<Point2> pts;
        pts.reserve(size);
        for (std::size_t i : idx) pts.push_back({eigs[i].real(), eigs[i].imag()});
        margin = std::max(margin, signed_distance_to_region(convex_hull_region(pts), p));
    });
    return margin;
}

/// Smallest distance from probe to any subset-hull boundary; used to skip
/// probes that sit inside a comparison tolerance band.
inline double normal_range_boundary_gap(const std::vector<complex_t>& eigs, std::size_t k,
                                        complex_t probe) {
    const std::size_t n = eigs.size();
    if (k < 1 || k > n) throw std::out_of_range("normal_range_boundary_gap: k out of range");
    if (n > 12) throw std::invalid_argument("normal_range_boundary_gap: more than 12 eigenvalues");

    const std::size_t size = n - k + 1;
    const Point2 p{probe.real(), probe.imag()};
    double gap = std::numeric_limits<double>::infinity();
    detail::for_each_subset(n, size, [&](const std::vector<std::size_t>& idx) {
        std::vector<Point2> pts;
        pts.reserve(size);
        for (std::size_t i : idx) pts.push_back({eigs[i].real(), eigs[i].imag()});
        gap = std::min(gap, std::abs(signed_distance_to_region(convex_hull_region(pts), p)));
    });
    return gap;
}

/// True iff probe lies in every hull of every (n-k+1)-subset of the
/// eigenvalues (closed hulls, tolerance tol).
inline bool normal_range_oracle(const std::vector<complex_t>& eigs, std::size_t k,
                                complex_t probe, double tol = 1e-9) {
    return normal_range_margin(eigs, k, probe) <= tol;
}

/// A rank-k projection P together with how well it certifies mu through
/// P T P = mu P.
struct ProjectionWitness {
    ComplexMatrix matrix;       // the projection under test
    std::size_t rank = 0;       // eigenvalues of P above 1/2
    complex_t mu{0.0, 0.0};
    double residual = 0.0;      // max entry of |P T P - mu P|
    bool accepted = false;
    double projection_defect = 0.0;  // max of |P - P*| and |P^2 - P| entries
};

/// Check a supplied projection: Hermitian, idempotent, rank k, and
/// P T P = mu P, everything within 1e-9.
inline ProjectionWitness verify_witness(const ComplexMatrix& t, const ComplexMatrix& p,
                                        complex_t mu, std::size_t k) {
    t.require_square("verify_witness");
    p.require_square("verify_witness");
    if (t.rows() != p.rows())
        throw std::invalid_argument("verify_witness: dimension mismatch");

    ProjectionWitness w;
    w.matrix = p;
    w.mu = mu;

    const double herm = p.hermitian_defect();
    const double idem = (p * p - p).max_abs_diff(ComplexMatrix(p.rows(), p.cols()));
    w.projection_defect = std::max(herm, idem);

    bool rank_ok = false;
    if (herm <= 1e-9) {
        const Spectrum s = eigenvalues_hermitian(hermitian_part(p));
        w.rank = static_cast<std::size_t>(
            std::count_if(s.values.begin(), s.values.end(), [](double v) { return v > 0.5; }));
        rank_ok = (w.rank == k);
    }

    ComplexMatrix ptp = p * t * p;
    ComplexMatrix mup(p.rows(), p.cols());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            mup(i, j) = mu * p(i, j);
    w.residual = ptp.max_abs_diff(mup);

    w.accepted = herm <= 1e-9 && idem <= 1e-9 && rank_ok && w.residual <= 1e-9;
    return w;
}

/// The explicit projection P = (sum of E_{2j-1,2j-1}, j = 1..ell+1) + I_m
/// in M_{2 ell + 1 + m}: rank ell+1+m, and P (J_{2ell+1}(0) + 0_m) P = 0
/// exactly, since consecutive indices cannot both be odd.
inline ComplexMatrix odd_jordan_witness(std::size_t ell, std::size_t m) {
    if (ell < 1) throw std::invalid_argument("odd_jordan_witness: ell must be >= 1");
    const std::size_t n = 2 * ell + 1;
    ComplexMatrix p(n + m, n + m);
    for (std::size_t j = 0; j <= ell; ++j) p(2 * j, 2 * j) = 1.0;
    for (std::size_t i = 0; i < m; ++i) p(n + i, n + i) = 1.0;
    return p;
}

}  // namespace hrnr
