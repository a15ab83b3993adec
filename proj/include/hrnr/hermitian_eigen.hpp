#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrnr/core_linalg.hpp"

namespace hrnr {

/// Real eigenvalues sorted non-increasing, multiplicities kept.
struct Spectrum {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// k-th largest eigenvalue (1-based), counting multiplicities.
inline double kth_eigenvalue(const Spectrum& spectrum, std::size_t k) {
    if (k < 1 || k > spectrum.values.size())
        throw std::out_of_range("kth_eigenvalue: k out of range");
    return spectrum.values[k - 1];
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations.
///
/// The input must be Hermitian to within 1e-10 (max entry of |H - H*|).
/// Convergence: off-diagonal Frobenius norm <= 1e-12 * ||H||_F, at most 100
/// sweeps. Eigenvalues only; no vectors are accumulated.
inline Spectrum eigenvalues_hermitian(const ComplexMatrix& h) {
    h.require_square("eigenvalues_hermitian");
    const std::size_t n = h.rows();

    const double defect = h.hermitian_defect();
    if (defect > 1e-10)
        throw std::invalid_argument(
            "eigenvalues_hermitian: input not Hermitian, |H - H*| entry = " + std::to_string(defect));

    // Work on an exactly Hermitian copy.
    ComplexMatrix a = hermitian_part(h, 0.0);

    const double norm = a.frobenius_norm();
    const double tol = 1e-12 * norm;

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                s += 2.0 * std::norm(a(i, j));
        return std::sqrt(s);
    };

    bool converged = (n <= 1) || off_norm() <= tol;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex_t g = a(p, q);
                const double absg = std::abs(g);
                if (absg == 0.0) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const complex_t phase = g / absg;

                // Rotation angle from tan(2*theta) = 2|g| / (app - aqq),
                // taking the smaller root for stability.
                const double w = (aqq - app) / (2.0 * absg);
                const double t = (w >= 0.0) ? -1.0 / (w + std::sqrt(w * w + 1.0))
                                            : 1.0 / (-w + std::sqrt(w * w + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const complex_t sp = s * phase;              // s * e^{i phi}
                const complex_t spc = s * std::conj(phase);  // s * e^{-i phi}

                // A <- U* A U with U = I except the (p,q) plane.
                for (std::size_t i = 0; i < n; ++i) {
                    const complex_t aip = a(i, p);
                    const complex_t aiq = a(i, q);
                    a(i, p) = c * aip + spc * aiq;
                    a(i, q) = -sp * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const complex_t apj = a(p, j);
                    const complex_t aqj = a(q, j);
                    a(p, j) = c * apj + sp * aqj;
                    a(q, j) = -spc * apj + c * aqj;
                }
            }
        }
        converged = off_norm() <= tol;
    }
    if (!converged)
        throw std::runtime_error("eigenvalues_hermitian: Jacobi failed to converge in 100 sweeps");

    Spectrum spectrum;
    spectrum.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) spectrum.values[i] = a(i, i).real();
    std::sort(spectrum.values.begin(), spectrum.values.end(), std::greater<double>());
    return spectrum;
}

/// Eigenvalues of Re(e^{i(theta - psi)} J_n(0)).
///
/// Conjugation with the diagonal unitary diag(e^{ij(theta-psi)}) removes the
/// rotation, so the spectrum is {cos(j*pi/(n+1)) : j = 1..n} for every theta
/// and psi. Parameters are kept for interface parity with the generic path.
inline Spectrum jordan_spectrum_fast(std::size_t n, double theta = 0.0, double psi = 0.0) {
    (void)theta;
    (void)psi;
    if (n == 0) throw std::invalid_argument("jordan_spectrum_fast: n must be >= 1");
    Spectrum spectrum;
    spectrum.values.resize(n);
    for (std::size_t j = 1; j <= n; ++j)
        spectrum.values[j - 1] = std::cos(static_cast<double>(j) * pi / (static_cast<double>(n) + 1.0));
    return spectrum;
}

}  // namespace hrnr
