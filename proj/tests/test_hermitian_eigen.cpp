#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>

#include "hrnr/core_linalg.hpp"
#include "hrnr/hermitian_eigen.hpp"

using namespace hrnr;

namespace {

ComplexMatrix random_hermitian(std::mt19937& rng, std::size_t n, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = {dist(rng), 0.0};
        for (std::size_t j = i + 1; j < n; ++j) {
            h(i, j) = {dist(rng), dist(rng)};
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

}  // namespace

TEST_CASE("eigenvalues of identity and small closed forms") {
    const auto id = eigenvalues_hermitian(ComplexMatrix::identity(3));
    REQUIRE(id.size() == 3);
    for (double v : id.values) CHECK(v == Catch::Approx(1.0).margin(1e-14));

    ComplexMatrix offdiag(2, 2, {complex_t{0, 0}, complex_t{0.5, 0}, complex_t{0.5, 0}, complex_t{0, 0}});
    const auto s = eigenvalues_hermitian(offdiag);
    CHECK(s.values[0] == Catch::Approx(0.5).margin(1e-14));
    CHECK(s.values[1] == Catch::Approx(-0.5).margin(1e-14));
}

TEST_CASE("Re J_4(0) has the cosine spectrum") {
    const auto s = eigenvalues_hermitian(hermitian_part(jordan_block(4, {0, 0})));
    REQUIRE(s.size() == 4);
    CHECK(s.values[0] == Catch::Approx(std::cos(pi / 5.0)).margin(1e-12));
    CHECK(s.values[1] == Catch::Approx(std::cos(2.0 * pi / 5.0)).margin(1e-12));
    CHECK(s.values[2] == Catch::Approx(-std::cos(2.0 * pi / 5.0)).margin(1e-12));
    CHECK(s.values[3] == Catch::Approx(-std::cos(pi / 5.0)).margin(1e-12));
}

TEST_CASE("kth_eigenvalue respects multiplicity and bounds") {
    Spectrum s{{3.0, 2.0, 2.0, 1.0}};
    CHECK(kth_eigenvalue(s, 1) == 3.0);
    CHECK(kth_eigenvalue(s, 3) == 2.0);
    CHECK(kth_eigenvalue(s, 4) == 1.0);
    CHECK_THROWS_AS(kth_eigenvalue(s, 0), std::out_of_range);
    CHECK_THROWS_AS(kth_eigenvalue(s, 5), std::out_of_range);

    Spectrum single{{5.0}};
    CHECK(kth_eigenvalue(single, 1) == 5.0);

    // third largest of Re J_5(0) is cos(3 pi / 6) = 0
    const auto j5 = eigenvalues_hermitian(hermitian_part(jordan_block(5, {0, 0})));
    CHECK(kth_eigenvalue(j5, 3) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("jordan_spectrum_fast values and theta invariance") {
    const auto s4 = jordan_spectrum_fast(4, 0.7, 0.1);
    REQUIRE(s4.size() == 4);
    for (std::size_t j = 1; j <= 4; ++j)
        CHECK(s4.values[j - 1] == std::cos(j * pi / 5.0));

    const auto s1 = jordan_spectrum_fast(1, 2.0);
    CHECK(s1.values[0] == Catch::Approx(0.0).margin(1e-16));

    // exact theta independence
    const auto a = jordan_spectrum_fast(9, 0.0, 0.3);
    const auto b = jordan_spectrum_fast(9, 5.1, 0.3);
    for (std::size_t i = 0; i < 9; ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("fast path agrees with the generic solver") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    for (std::size_t n : {2, 3, 6, 12}) {
        for (int trial = 0; trial < 10; ++trial) {
            const double theta = angle(rng);
            const double psi = angle(rng);
            ComplexMatrix j = jordan_block(n, {0, 0});
            for (std::size_t i = 0; i + 1 < n; ++i) j(i, i + 1) = std::polar(1.0, -psi);
            const auto generic = eigenvalues_hermitian(hermitian_part(j, theta));
            const auto fast = jordan_spectrum_fast(n, theta, psi);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(generic.values[i] - fast.values[i]) <= 1e-10);
        }
    }
}

TEST_CASE("trace and Frobenius invariants on random Hermitian matrices") {
    std::mt19937 rng(23);
    for (std::size_t n : {2, 5, 11, 30}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto h = random_hermitian(rng, n, 2.0);
            const auto s = eigenvalues_hermitian(h);
            REQUIRE(s.size() == n);
            for (std::size_t i = 0; i + 1 < n; ++i) CHECK(s.values[i] >= s.values[i + 1]);

            const double trace = h.trace().real();
            const double sum = std::accumulate(s.values.begin(), s.values.end(), 0.0);
            const double scale = std::max(1.0, h.frobenius_norm());
            CHECK(std::abs(sum - trace) <= 1e-9 * static_cast<double>(n) * scale);

            const double f2 = h.frobenius_norm() * h.frobenius_norm();
            double eig2 = 0.0;
            for (double v : s.values) eig2 += v * v;
            CHECK(std::abs(eig2 - f2) <= 1e-8 * scale * scale);
        }
    }
}

TEST_CASE("full model spectrum is the union of block spectra") {
    // eigenvalues of Re(e^{i theta} T0) = {cos(j pi/(n+1))} plus
    // |beta-alpha| cos(theta) with multiplicity m
    const auto model = make_model(5, 3, {0.4, -0.2}, {1.2, 0.9});
    const auto t0 = materialize(model, ModelForm::normalized);
    for (double theta : {0.0, 0.9, 2.5, 4.4}) {
        const auto s = eigenvalues_hermitian(hermitian_part(t0, theta));
        std::vector<double> expected = jordan_spectrum_fast(5, theta, model.psi).values;
        for (std::size_t i = 0; i < 3; ++i)
            expected.push_back(model.radius() * std::cos(theta));
        std::sort(expected.begin(), expected.end(), std::greater<double>());
        REQUIRE(s.size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(std::abs(s.values[i] - expected[i]) <= 1e-10);
    }
}

TEST_CASE("non-Hermitian input is rejected with the defect size") {
    ComplexMatrix bad(2, 2, {complex_t{0, 0}, complex_t{1, 0}, complex_t{0, 0}, complex_t{0, 0}});
    CHECK_THROWS_WITH(eigenvalues_hermitian(bad), Catch::Matchers::ContainsSubstring("not Hermitian"));

    // tiny asymmetry below tolerance passes
    ComplexMatrix almost(2, 2, {complex_t{1, 0}, complex_t{0.5, 1e-12},
                                complex_t{0.5, -1e-12 + 1e-13}, complex_t{2, 0}});
    CHECK_NOTHROW(eigenvalues_hermitian(almost));
}
