#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hrnr {

using complex_t = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

inline bool is_finite(complex_t z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Principal argument mapped into [0, 2*pi). arg(0) = 0.
inline double arg_two_pi(complex_t z) {
    if (z == complex_t{0.0, 0.0}) return 0.0;
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * pi;
    if (a >= 2.0 * pi) a = 0.0;
    return a;
}

/// Reduce an arbitrary angle into [0, 2*pi).
inline double wrap_angle(double t) {
    t = std::fmod(t, 2.0 * pi);
    if (t < 0.0) t += 2.0 * pi;
    if (t >= 2.0 * pi) t = 0.0;
    return t;
}

/// Dense complex matrix, row-major. Sizes here are desk-scale, so no
/// sparse or expression machinery; just storage plus the handful of
/// operations the range engines need.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, complex_t{0.0, 0.0}) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex_t> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_)
            throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
        for (const auto& z : entries_)
            if (!is_finite(z))
                throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    complex_t& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const complex_t& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<complex_t>& entries() const { return entries_; }

    complex_t trace() const {
        require_square("trace");
        complex_t t{0.0, 0.0};
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : entries_) s += std::norm(z);
        return std::sqrt(s);
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix a(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                a(j, i) = std::conj((*this)(i, j));
        return a;
    }

    /// Largest entry magnitude of (this - other); dimension mismatch throws.
    double max_abs_diff(const ComplexMatrix& other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw std::invalid_argument("max_abs_diff: dimension mismatch");
        double m = 0.0;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
        return m;
    }

    /// Deviation from Hermitian symmetry: max |A_ij - conj(A_ji)|.
    double hermitian_defect() const {
        require_square("hermitian_defect");
        double m = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return m;
    }

    void require_square(const char* who) const {
        if (!square())
            throw std::invalid_argument(std::string(who) + ": matrix must be square");
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex_t> entries_;
};

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("operator*: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complex_t aik = a(i, k);
            if (aik == complex_t{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("operator-: dimension mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            c(i, j) = a(i, j) - b(i, j);
    return c;
}

/// n-by-n Jordan block: alpha on the diagonal, ones on the first
/// superdiagonal.
inline ComplexMatrix jordan_block(std::size_t n, complex_t alpha) {
    if (n == 0) throw std::invalid_argument("jordan_block: n must be >= 1");
    if (!is_finite(alpha)) throw std::invalid_argument("jordan_block: non-finite alpha");
    ComplexMatrix j(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, i) = alpha;
        if (i + 1 < n) j(i, i + 1) = 1.0;
    }
    return j;
}

/// Block-diagonal direct sum. A 0x0 block acts as the identity of the
/// operation.
inline ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.require_square("direct_sum");
    b.require_square("direct_sum");
    const std::size_t na = a.rows(), nb = b.rows();
    ComplexMatrix c(na + nb, na + nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            c(i, j) = a(i, j);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            c(na + i, na + j) = b(i, j);
    return c;
}

/// Re(e^{i theta} T) = (e^{i theta} T + e^{-i theta} T*) / 2.
/// The result is Hermitian exactly: the upper triangle is computed and the
/// lower triangle mirrored, diagonal imaginary parts forced to zero.
inline ComplexMatrix hermitian_part(const ComplexMatrix& t, double theta = 0.0) {
    t.require_square("hermitian_part");
    const std::size_t n = t.rows();
    const complex_t rot = std::polar(1.0, theta);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = complex_t{(rot * t(i, i)).real(), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            const complex_t v = 0.5 * (rot * t(i, j) + std::conj(rot * t(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

/// Parameters of the structured family J_n(alpha) + beta I_m (direct sum).
/// psi = arg(beta - alpha) in [0, 2*pi); psi = 0 when beta = alpha, in which
/// case the normalized form is J_n(0) + 0_m.
struct JordanScalarModel {
    std::size_t n = 2;   // Jordan block size, >= 2
    std::size_t m = 0;   // scalar block size; 0 means pure Jordan block
    complex_t alpha{0.0, 0.0};
    complex_t beta{0.0, 0.0};
    double psi = 0.0;

    std::size_t dim() const { return n + m; }
    double radius() const { return std::abs(beta - alpha); }  // |beta - alpha|
};

inline JordanScalarModel make_model(std::size_t n, std::size_t m, complex_t alpha, complex_t beta) {
    if (n < 2) throw std::invalid_argument("make_model: n must be >= 2");
    if (!is_finite(alpha) || !is_finite(beta))
        throw std::invalid_argument("make_model: non-finite parameter");
    JordanScalarModel model;
    model.n = n;
    model.m = m;
    model.alpha = alpha;
    model.beta = beta;
    model.psi = (beta == alpha) ? 0.0 : arg_two_pi(beta - alpha);
    return model;
}

enum class ModelForm {
    world,       // T = J_n(alpha) + beta I_m
    normalized,  // T0 = e^{-i psi} J_n(0) + |beta - alpha| I_m
};

/// Builds the model matrix, either as given or in the normalized frame
/// where T = alpha I + e^{i psi} T0.
inline ComplexMatrix materialize(const JordanScalarModel& model, ModelForm form = ModelForm::world) {
    ComplexMatrix scalar(model.m, model.m);
    if (form == ModelForm::world) {
        for (std::size_t i = 0; i < model.m; ++i) scalar(i, i) = model.beta;
        return direct_sum(jordan_block(model.n, model.alpha), scalar);
    }
    const double r = model.radius();
    for (std::size_t i = 0; i < model.m; ++i) scalar(i, i) = r;
    ComplexMatrix j = jordan_block(model.n, complex_t{0.0, 0.0});
    const complex_t rot = std::polar(1.0, -model.psi);
    for (std::size_t i = 0; i + 1 < model.n; ++i) j(i, i + 1) = rot;
    return direct_sum(j, scalar);
}

}  // namespace hrnr
