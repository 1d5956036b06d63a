#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "povmlab/hermitian.hpp"

using namespace povmlab;

namespace {

HermitianMatrix random_hermitian(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) m(r, c) = Complex(gauss(rng), gauss(rng));
    }
    return HermitianMatrix(m + m.adjoint().eval());
}

// Independent oracle for the dominant |eigenvalue|: power iteration on A^2
// (so sign-mixed spectra cannot stall it) with a Rayleigh estimate.
double power_iteration_norm(const ComplexMatrix &a, int iterations = 5000) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.rows()).normalized();
    const ComplexMatrix a2 = a * a;
    for (int i = 0; i < iterations; ++i) v = (a2 * v).normalized();
    return std::sqrt(std::abs((v.adjoint() * a2 * v)(0).real()));
}

} // namespace

TEST_CASE("op_norm on fixed spectra") {
    CHECK(op_norm(HermitianMatrix::identity(5)) == doctest::Approx(1.0).epsilon(1e-14));
    RealVector d(2);
    d << 1.0, -3.0;
    CHECK(op_norm(HermitianMatrix::diagonal(d)) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("op_norm matches power iteration on random matrices") {
    for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
        const auto a = random_hermitian(6, seed);
        CHECK(op_norm(a) == doctest::Approx(power_iteration_norm(a.mat())).epsilon(1e-8));
    }
}

TEST_CASE("spectral_decomp reconstructs and orders") {
    SUBCASE("diagonal input is sorted ascending") {
        RealVector d(2);
        d << 2.0, 1.0;
        const auto decomp = spectral_decomp(HermitianMatrix::diagonal(d));
        CHECK(decomp.eigenvalues(0) == doctest::Approx(1.0));
        CHECK(decomp.eigenvalues(1) == doctest::Approx(2.0));
    }
    SUBCASE("pauli-x spectrum") {
        ComplexMatrix x(2, 2);
        x << 0, 1, 1, 0;
        const auto decomp = spectral_decomp(HermitianMatrix(x));
        CHECK(decomp.eigenvalues(0) == doctest::Approx(-1.0));
        CHECK(decomp.eigenvalues(1) == doctest::Approx(1.0));
    }
    SUBCASE("random reconstruction residual") {
        const auto a = random_hermitian(7, 99);
        const auto decomp = spectral_decomp(a);
        const ComplexMatrix rebuilt = decomp.eigenvectors *
                                      decomp.eigenvalues.cast<Complex>().asDiagonal() *
                                      decomp.eigenvectors.adjoint();
        const double scale = a.mat().cwiseAbs().maxCoeff();
        CHECK((rebuilt - a.mat()).cwiseAbs().maxCoeff() / scale < 1e-10);
        const ComplexMatrix gram =
            decomp.eigenvectors.adjoint() * decomp.eigenvectors;
        CHECK((gram - ComplexMatrix::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("psd_sqrt") {
    SUBCASE("diagonal") {
        RealVector d(2);
        d << 4.0, 9.0;
        const auto root = psd_sqrt(HermitianMatrix::diagonal(d), 1e-12);
        CHECK(root.mat()(0, 0).real() == doctest::Approx(2.0));
        CHECK(root.mat()(1, 1).real() == doctest::Approx(3.0));
    }
    SUBCASE("zero matrix") {
        const auto root = psd_sqrt(HermitianMatrix::zero(3), 1e-12);
        CHECK(root.mat().cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("random PSD round trip") {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> gauss(0.0, 1.0);
        ComplexMatrix g(5, 5);
        for (int r = 0; r < 5; ++r) {
            for (int c = 0; c < 5; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
        }
        const HermitianMatrix a(g * g.adjoint());
        const auto root = psd_sqrt(a);
        CHECK((root.mat() * root.mat() - a.mat()).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(comm_norm(root, a) < 1e-9);
    }
    SUBCASE("rejects indefinite input") {
        RealVector d(2);
        d << 1.0, -0.5;
        CHECK_THROWS_AS(psd_sqrt(HermitianMatrix::diagonal(d), 1e-10),
                        NotPositiveSemidefinite);
    }
}

TEST_CASE("comm_norm") {
    RealVector d(2);
    d << 1.0, -1.0;
    const auto sz = HermitianMatrix::diagonal(d);
    ComplexMatrix x(2, 2);
    x << 0, 1, 1, 0;
    const HermitianMatrix sx(x);

    CHECK(comm_norm(sz, sz) == 0.0);
    CHECK(comm_norm(sz, sx) == doctest::Approx(2.0).epsilon(1e-12));

    RealVector d2(2);
    d2 << 0.25, 0.75;
    CHECK(comm_norm(sz, HermitianMatrix::diagonal(d2)) == 0.0);

    CHECK_THROWS_AS(comm_norm(sz, HermitianMatrix::identity(3)), DimensionMismatch);
}

TEST_CASE("norm properties on random pairs") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_hermitian(5, rng());
        const auto b = random_hermitian(5, rng());
        const double c = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
        CHECK(op_norm(a * c) == doctest::Approx(std::abs(c) * op_norm(a)).epsilon(1e-10));
        CHECK(op_norm(a + b) <= op_norm(a) + op_norm(b) + 1e-10);
        CHECK(comm_norm(a, b) <= 2.0 * op_norm(a) * op_norm(b) + 1e-10);
    }
}

TEST_CASE("construction symmetrizes and records the defect") {
    ComplexMatrix skewed(2, 2);
    skewed << Complex(1.0, 0.0), Complex(2.0, 1.0), Complex(2.0, -1.0 + 1e-13), Complex(0.5, 0.0);
    const HermitianMatrix a(skewed);
    CHECK(a.hermiticity_defect() < 1e-12);
    CHECK((a.mat() - a.mat().adjoint().eval()).cwiseAbs().maxCoeff() == 0.0);

    ComplexMatrix bad(2, 2);
    bad << 1.0, std::numeric_limits<double>::infinity(), 0.0, 1.0;
    CHECK_THROWS_AS(HermitianMatrix{bad}, InvalidValue);
}
