#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "povmlab/smearing.hpp"

using namespace povmlab;

namespace {

MarkovKernel random_kernel(Eigen::Index l, Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> exp_draw(1.0);
    Eigen::MatrixXd gamma(l, n);
    for (Eigen::Index w = 0; w < l; ++w) {
        double total = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            gamma(w, j) = exp_draw(rng);
            total += gamma(w, j);
        }
        gamma.row(w) /= total;
    }
    return MarkovKernel(std::move(gamma));
}

// Commutative POVM: random eigenvalue columns in a shared random basis.
FinitePovm random_commutative_povm(Eigen::Index dim, Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    }
    const Eigen::HouseholderQR<ComplexMatrix> qr(g);
    const ComplexMatrix basis = qr.householderQ();

    std::exponential_distribution<double> exp_draw(1.0);
    Eigen::MatrixXd weights(dim, n);
    for (Eigen::Index v = 0; v < dim; ++v) {
        double total = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            weights(v, j) = exp_draw(rng);
            total += weights(v, j);
        }
        weights.row(v) /= total;
    }
    std::vector<HermitianMatrix> elements;
    for (Eigen::Index j = 0; j < n; ++j) {
        elements.emplace_back(
            ComplexMatrix(basis * weights.col(j).cast<Complex>().asDiagonal() * basis.adjoint()));
    }
    return FinitePovm(std::move(elements));
}

} // namespace

TEST_CASE("MarkovKernel validation") {
    Eigen::MatrixXd good(2, 2);
    good << 0.3, 0.7, 1.0, 0.0;
    CHECK_NOTHROW(MarkovKernel{good});

    Eigen::MatrixXd negative(1, 2);
    negative << 1.2, -0.2;
    CHECK_THROWS_AS(MarkovKernel{negative}, InvalidValue);

    Eigen::MatrixXd unnormalized(1, 2);
    unnormalized << 0.5, 0.6;
    CHECK_THROWS_AS(MarkovKernel{unnormalized}, InvalidValue);
}

TEST_CASE("smear") {
    const auto b = random_povm(3, 3, 11);

    SUBCASE("identity kernel is a no-op") {
        const auto a = smear(b, MarkovKernel::identity(3));
        for (Eigen::Index j = 0; j < 3; ++j) {
            CHECK((a.element(j).mat() - b.element(j).mat()).cwiseAbs().maxCoeff() == 0.0);
        }
    }
    SUBCASE("single-column kernel collapses to the total measure") {
        const auto a = smear(b, MarkovKernel(Eigen::MatrixXd::Ones(3, 1)));
        CHECK(a.outcomes() == 1);
        CHECK((a.element(0).mat() - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() <
              1e-12);
    }
    SUBCASE("diagonal example") {
        RealVector p1(2), p2(2);
        p1 << 1.0, 0.0;
        p2 << 0.0, 1.0;
        const FinitePovm sharp({HermitianMatrix::diagonal(p1), HermitianMatrix::diagonal(p2)});
        Eigen::MatrixXd gamma(2, 2);
        gamma << 0.3, 0.7, 1.0, 0.0;
        const auto a = smear(sharp, MarkovKernel(gamma));
        CHECK(a.element(0).mat()(0, 0).real() == doctest::Approx(0.3));
        CHECK(a.element(0).mat()(1, 1).real() == doctest::Approx(1.0));
        CHECK(a.element(1).mat()(0, 0).real() == doctest::Approx(0.7));
        CHECK(a.element(1).mat()(1, 1).real() == doctest::Approx(0.0));
    }
    SUBCASE("size mismatch") {
        CHECK_THROWS_AS(smear(b, MarkovKernel::identity(4)), DimensionMismatch);
    }
}

TEST_CASE("pushforward and the contract identity") {
    const auto kernel = random_kernel(4, 3, 5);

    SUBCASE("identity kernel and all-ones") {
        const auto id = MarkovKernel::identity(3);
        RealVector x(3);
        x << 0.2, -0.9, 0.5;
        CHECK((pushforward(id, OutcomeVector(x)).vec() - x).cwiseAbs().maxCoeff() == 0.0);
        CHECK((pushforward(kernel, OutcomeVector::ones(3)).vec() -
               RealVector::Ones(4))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
    SUBCASE("contract(smear(B,k), x) = contract(B, Gamma x)") {
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const auto b = random_povm(3, 4, rng());
            const auto k = random_kernel(4, 3, rng());
            const auto a = smear(b, k);
            RealVector x(3);
            for (int j = 0; j < 3; ++j) x(j) = unit(rng);
            const OutcomeVector outcome(x);
            const auto pushed = pushforward(k, outcome);
            CHECK(pushed.vec().cwiseAbs().maxCoeff() <= 1.0);
            CHECK((contract(a, outcome).mat() - contract(b, pushed).mat())
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("nu_q monotonicity at witness level") {
    // Smearing preserves the commutator of contractions exactly:
    // [A(x), A(y)] = [B(Gamma x), B(Gamma y)].
    std::mt19937_64 rng(88);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto b = random_povm(3, 4, rng());
        const auto k = random_kernel(4, 3, rng());
        const auto a = smear(b, k);
        for (int pair = 0; pair < 5; ++pair) {
            RealVector x(3), y(3);
            for (int j = 0; j < 3; ++j) x(j) = unit(rng);
            for (int j = 0; j < 3; ++j) y(j) = unit(rng);
            const OutcomeVector ox(x), oy(y);
            const double direct = comm_norm(contract(a, ox), contract(a, oy));
            const double lifted =
                comm_norm(contract(b, pushforward(k, ox)), contract(b, pushforward(k, oy)));
            CHECK(direct == doctest::Approx(lifted).epsilon(1e-10));
        }
    }
}

TEST_CASE("kernel composition matches sequential smearing") {
    const auto b = random_povm(3, 4, 13);
    const auto k1 = random_kernel(4, 3, 14);
    const auto k2 = random_kernel(3, 2, 15);
    const auto sequential = smear(smear(b, k1), k2);
    const auto composed = smear(b, k1.compose(k2));
    for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK((sequential.element(j).mat() - composed.element(j).mat()).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("unsmear_commutative") {
    SUBCASE("diagonal example is read off") {
        RealVector a1(2), a2(2);
        a1 << 0.3, 1.0;
        a2 << 0.7, 0.0;
        const FinitePovm a({HermitianMatrix::diagonal(a1), HermitianMatrix::diagonal(a2)});
        const auto result = unsmear_commutative(a, 1e-10);
        REQUIRE(result.projectors.outcomes() == 2);
        // rows sorted lexicographically: (0.3, 0.7) then (1, 0)
        CHECK(result.kernel(0, 0) == doctest::Approx(0.3).epsilon(1e-12));
        CHECK(result.kernel(0, 1) == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(result.kernel(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(result.kernel(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK((result.projectors.element(0).mat() -
               HermitianMatrix::diagonal((RealVector(2) << 1, 0).finished()).mat())
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
    SUBCASE("projector valued input returns a 0/1 kernel") {
        RealVector p1(3), p2(3);
        p1 << 1.0, 1.0, 0.0;
        p2 << 0.0, 0.0, 1.0;
        const FinitePovm sharp({HermitianMatrix::diagonal(p1), HermitianMatrix::diagonal(p2)});
        const auto result = unsmear_commutative(sharp, 1e-10);
        CHECK(result.projectors.outcomes() == 2);
        for (Eigen::Index w = 0; w < result.kernel.source_size(); ++w) {
            for (Eigen::Index j = 0; j < 2; ++j) {
                const double entry = result.kernel(w, j);
                CHECK((std::abs(entry) < 1e-12 || std::abs(entry - 1.0) < 1e-12));
            }
        }
    }
    SUBCASE("round trip on random commutative POVMs") {
        std::mt19937_64 rng(200);
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_commutative_povm(4, 3, rng());
            const auto result = unsmear_commutative(a);
            // projector family is sharp
            for (Eigen::Index w = 0; w < result.projectors.outcomes(); ++w) {
                const auto &p = result.projectors.element(w).mat();
                CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-10);
            }
            const auto rebuilt = smear(result.projectors, result.kernel);
            for (Eigen::Index j = 0; j < 3; ++j) {
                CHECK((rebuilt.element(j).mat() - a.element(j).mat()).cwiseAbs().maxCoeff() <
                      4.0 * 1e-8);
            }
        }
    }
    SUBCASE("rejects noncommutative input") {
        const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
        ComplexMatrix x(2, 2), z(2, 2);
        x << 0, 1, 1, 0;
        z << 1, 0, 0, -1;
        std::vector<HermitianMatrix> elements;
        elements.emplace_back((id + 0.5 * x) / 3.0);
        elements.emplace_back((id + 0.5 * z) / 3.0);
        elements.emplace_back((id - 0.5 * (x + z)) / 3.0);
        CHECK_THROWS_AS(unsmear_commutative(FinitePovm(std::move(elements)), 1e-10),
                        NotCommutative);
    }
}

TEST_CASE("systematic_noise_bracket") {
    SearchBudget budget;

    SUBCASE("commutative POVM brackets to (~0, 0)") {
        const auto a = random_commutative_povm(4, 3, 7);
        const auto bracket = systematic_noise_bracket(a, budget);
        CHECK(bracket.upper == 0.0);
        CHECK(bracket.lower <= 1e-9);
    }
    SUBCASE("projector valued POVM brackets to (0, 0)") {
        RealVector p1(2), p2(2);
        p1 << 1.0, 0.0;
        p2 << 0.0, 1.0;
        const FinitePovm sharp({HermitianMatrix::diagonal(p1), HermitianMatrix::diagonal(p2)});
        const auto bracket = systematic_noise_bracket(sharp, budget);
        CHECK(bracket.lower == 0.0);
        CHECK(bracket.upper == 0.0);
    }
    SUBCASE("noncommutative POVM keeps lower <= upper") {
        std::mt19937_64 rng(404);
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_povm(3, 4, rng());
            const auto bracket = systematic_noise_bracket(a, budget);
            CHECK(bracket.lower <= bracket.upper + 1e-9);
            CHECK(bracket.lower >= 0.0);
        }
    }
}
