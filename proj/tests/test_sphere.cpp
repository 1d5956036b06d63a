#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "povmlab/sphere.hpp"

using namespace povmlab;

namespace {

constexpr double kPi = std::numbers::pi;

SphereFunction smooth_test_function() {
    // band-limited, phi-dependent, no analytic partials attached
    return SphereFunction([](const SpherePoint &p) {
        const double s = std::sqrt(std::max(0.0, 1.0 - p.t * p.t));
        return 0.4 + 0.3 * p.t * p.t + 0.5 * s * std::cos(p.phi) - 0.2 * s * s * std::sin(2.0 * p.phi);
    });
}

} // namespace

TEST_CASE("gauss_legendre exactness") {
    RealVector nodes, weights;
    gauss_legendre(6, nodes, weights);
    CHECK(weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    // exact for degree <= 11
    for (int degree : {0, 1, 2, 5, 8, 11}) {
        double quad = 0.0;
        for (int i = 0; i < 6; ++i) quad += weights(i) * std::pow(nodes(i), degree);
        const double exact = (degree % 2 == 0) ? 2.0 / (degree + 1) : 0.0;
        CHECK(quad == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("sphere grid quadrature") {
    const SphereGrid grid(16, 24);
    CHECK(grid.total_weight() == doctest::Approx(1.0).epsilon(1e-14));

    SUBCASE("uniform-measure moments") {
        CHECK(grid.integrate(SphereFunction::constant(1.0)) ==
              doctest::Approx(1.0).epsilon(1e-13));
        CHECK(grid.integrate(coordinate_q3()) == doctest::Approx(0.0).epsilon(1e-13));
        const auto q3 = coordinate_q3();
        CHECK(grid.integrate(q3 * q3) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    }
    SUBCASE("separable monomials t^k e^{il phi} integrate exactly") {
        for (int k : {1, 2, 4}) {
            for (int l : {1, 3, 7}) {
                SphereFunction f([k, l](const SpherePoint &p) {
                    return std::pow(p.t, k) * std::cos(l * p.phi);
                });
                CHECK(grid.integrate(f) == doctest::Approx(0.0).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("sup_norm") {
    const SphereGrid grid(64, 16);
    CHECK(sup_norm(SphereFunction::constant(1.0), grid) == 1.0);
    // Gauss nodes crowd the poles: the grid max of |t| is within 5e-3 of 1
    CHECK(sup_norm(coordinate_q3(), grid) > 1.0 - 5e-3);
    CHECK(sup_norm(coordinate_q3(), grid) < 1.0);

    SphereFunction bad([](const SpherePoint &p) { return p.t > 0 ? 1.0 / 0.0 : 0.0; });
    CHECK_THROWS_AS(sup_norm(bad, grid), InvalidValue);
}

TEST_CASE("poisson_bracket") {
    std::vector<SpherePoint> samples = {
        {0.3, 0.7}, {-0.6, 2.1}, {0.05, 4.4}, {0.9, 5.9}, {-0.95, 0.2}};

    SUBCASE("bracket with itself vanishes") {
        const auto f = smooth_test_function();
        const auto bracket = poisson_bracket(f, f);
        for (const auto &p : samples) CHECK(std::abs(bracket(p)) < 1e-6);
    }
    SUBCASE("functions of t only commute") {
        const auto f = SphereFunction::from_profile([](double t) { return t * t; });
        const auto g = SphereFunction::from_profile([](double t) { return std::sin(t); });
        const auto bracket = poisson_bracket(f, g);
        for (const auto &p : samples) CHECK(std::abs(bracket(p)) < 1e-9);
    }
    SUBCASE("calibration pair: {q1, q2} = 2 q3") {
        const auto analytic = poisson_bracket(coordinate_q1(), coordinate_q2());
        // same pair without analytic partials exercises the FD fallback
        const SphereFunction q1_fd([](const SpherePoint &p) {
            return std::sqrt(std::max(0.0, 1.0 - p.t * p.t)) * std::cos(p.phi);
        });
        const SphereFunction q2_fd([](const SpherePoint &p) {
            return std::sqrt(std::max(0.0, 1.0 - p.t * p.t)) * std::sin(p.phi);
        });
        const auto numeric = poisson_bracket(q1_fd, q2_fd);
        for (const auto &p : samples) {
            CHECK(analytic(p) == doctest::Approx(2.0 * p.t).epsilon(1e-12));
            CHECK(numeric(p) == doctest::Approx(2.0 * p.t).epsilon(1e-6));
        }
        const SphereGrid grid(64, 64);
        CHECK(sup_norm(analytic, grid) == doctest::Approx(2.0).epsilon(5e-3));
    }
    SUBCASE("antisymmetry pointwise") {
        const auto f = smooth_test_function();
        const auto g = coordinate_q1();
        const auto fg = poisson_bracket(f, g);
        const auto gf = poisson_bracket(g, f);
        for (const auto &p : samples) CHECK(fg(p) == doctest::Approx(-gf(p)).epsilon(1e-9));
    }
    SUBCASE("Leibniz rule on sampled points") {
        const auto f = coordinate_q1();
        const auto g = coordinate_q3();
        const auto h = smooth_test_function();
        const auto lhs = poisson_bracket(f * g, h);
        const auto gh = poisson_bracket(g, h);
        const auto fh = poisson_bracket(f, h);
        for (const auto &p : samples) {
            const double rhs = f(p) * gh(p) + g(p) * fh(p);
            CHECK(lhs(p) == doctest::Approx(rhs).epsilon(1e-5));
        }
    }
}

TEST_CASE("band_cover") {
    SUBCASE("two bands with overlap 1/2") {
        const auto cover = band_cover(2, 0.5);
        REQUIRE(cover.size() == 2);
        CHECK(cover[0].t_min == doctest::Approx(-1.0));
        CHECK(cover[0].t_max == doctest::Approx(0.25));
        CHECK(cover[1].t_min == doctest::Approx(-0.25));
        CHECK(cover[1].t_max == doctest::Approx(1.0));
    }
    SUBCASE("union covers [-1, 1]") {
        for (int n : {2, 3, 5, 8}) {
            const auto cover = band_cover(n, 0.3);
            for (int i = 0; i <= 1000; ++i) {
                const double t = -1.0 + 2.0 * i / 1000.0;
                bool inside = false;
                for (const auto &band : cover) {
                    if (t >= band.t_min && t <= band.t_max) inside = true;
                }
                CHECK(inside);
            }
        }
    }
    SUBCASE("exactly one band of three contains the equator") {
        const auto cover = band_cover(3, 0.4);
        int hits = 0;
        for (const auto &band : cover) {
            if (band.t_min < 0.0 && 0.0 < band.t_max) ++hits;
        }
        CHECK(hits == 1);
    }
    SUBCASE("invalid parameters") {
        CHECK_THROWS_AS(band_cover(1, 0.3), InvalidValue);
        CHECK_THROWS_AS(band_cover(3, 0.0), InvalidValue);
        CHECK_THROWS_AS(band_cover(3, 5.0), InvalidValue);
    }
}

TEST_CASE("band_partition") {
    const SphereGrid grid(64, 8);

    SUBCASE("partition invariants on the grid") {
        const auto partition = band_partition(band_cover(3, 0.4));
        const auto report = partition.validate(grid);
        CHECK(report.min_value >= -1e-12);
        CHECK(report.max_sum_defect < 1e-10);
        CHECK(report.max_outside_support < 1e-10);
    }
    SUBCASE("classically commutative") {
        const auto partition = band_partition(band_cover(3, 0.4));
        const auto result = nu_c(partition, grid, SearchBudget{});
        CHECK(result.value == 0.0);
    }
    SUBCASE("gap in the cover is rejected") {
        std::vector<BandInterval> gapped = {{-1.0, -0.2}, {0.2, 1.0}};
        CHECK_THROWS_AS(band_partition(gapped), InvalidValue);
    }
}

TEST_CASE("cap_partition") {
    const SphereGrid grid(64, 128);

    SUBCASE("tetrahedral caps at radius 1.25 are a valid displaceable cover") {
        const auto partition = cap_partition(named_cap_centers("tetrahedron"), 1.25, grid);
        const auto report = partition.validate(grid);
        CHECK(report.min_value >= -1e-12);
        CHECK(report.max_sum_defect < 1e-10);
        CHECK(report.max_outside_support < 1e-10);
        CHECK(cap_area_fraction(1.25) < 0.5);
    }
    SUBCASE("two small antipodal caps leave the equator uncovered") {
        const std::vector<SpherePoint> poles = {{1.0, 0.0}, {-1.0, 0.0}};
        CHECK_THROWS_AS(cap_partition(poles, 0.5, grid), CoverageGap);
    }
    SUBCASE("normalized sum is one") {
        const auto partition = cap_partition(named_cap_centers("octahedron"), 1.26, grid);
        CHECK(partition.validate(grid).max_sum_defect < 1e-10);
    }
}

TEST_CASE("nu_c") {
    const SearchBudget budget;

    SUBCASE("two-element partitions are Poisson commutative") {
        // f_2 = 1 - f_1, so every bracket is {f, -f} = 0
        const auto partition = band_partition(band_cover(2, 0.5));
        const SphereGrid grid(48, 8);
        CHECK(nu_c(partition, grid, budget).value == 0.0);
    }
    SUBCASE("tetrahedral caps: positive, witness-consistent, grid-stable") {
        const auto centers = named_cap_centers("tetrahedron");
        const SphereGrid coarse(64, 128);
        const SphereGrid fine(128, 256);
        const auto partition = cap_partition(centers, 1.55, coarse);
        const auto lo = nu_c(partition, coarse, budget);
        const auto hi = nu_c(partition, fine, budget);
        CHECK(lo.value > 0.0);
        CHECK(std::abs(hi.value - lo.value) / hi.value < 0.02);

        // witness pair reproduces the value at the witness point
        const auto &p = partition;
        const Eigen::Index n = p.size();
        RealVector u(n), v(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            u(j) = p.function(j).partial_phi(lo.point);
            v(j) = p.function(j).partial_t(lo.point);
        }
        const double quoted = 2.0 * ((lo.witness_x.vec().dot(u)) * (lo.witness_y.vec().dot(v)) -
                                     (lo.witness_x.vec().dot(v)) * (lo.witness_y.vec().dot(u)));
        CHECK(std::abs(quoted) == doctest::Approx(lo.value).epsilon(1e-10));
    }
    SUBCASE("invariant under relabeling") {
        const SphereGrid grid(48, 64);
        const auto partition = cap_partition(named_cap_centers("tetrahedron"), 1.55, grid);
        const auto base = nu_c(partition, grid, budget);
        const auto shuffled = partition.permuted({2, 0, 3, 1});
        CHECK(nu_c(shuffled, grid, budget).value ==
              doctest::Approx(base.value).epsilon(1e-12));
    }
}

TEST_CASE("named_cap_centers") {
    CHECK(named_cap_centers("tetrahedron").size() == 4);
    CHECK(named_cap_centers("octahedron").size() == 6);
    CHECK(named_cap_centers("cube").size() == 8);
    CHECK(named_cap_centers("icosahedron").size() == 12);
    CHECK_THROWS_AS(named_cap_centers("dodecahedron"), InvalidValue);

    // unit vectors, pairwise distinct
    for (const auto &c : named_cap_centers("icosahedron")) {
        CHECK(embed(c).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("sphere function plumbing") {
    SUBCASE("built-ins are 2pi periodic in phi") {
        for (const auto &f : {coordinate_q1(), coordinate_q2(), smooth_test_function()}) {
            for (double t : {-0.8, 0.1, 0.7}) {
                CHECK(f({t, 0.0}) == doctest::Approx(f({t, 2.0 * kPi - 1e-12})).epsilon(1e-8));
            }
        }
    }
    SUBCASE("arithmetic keeps analytic partials") {
        const auto f = coordinate_q1() * coordinate_q3() + coordinate_q2() * 0.5;
        CHECK(f.has_analytic_partials());
        const SpherePoint p{0.4, 1.3};
        const double s = std::sqrt(1.0 - 0.16);
        CHECK(f(p) == doctest::Approx(s * std::cos(1.3) * 0.4 + 0.5 * s * std::sin(1.3)));
    }
    SUBCASE("geodesic helpers") {
        CHECK(geodesic_angle({1.0, 0.0}, {-1.0, 0.0}) == doctest::Approx(kPi));
        CHECK(geodesic_angle({0.0, 0.0}, {0.0, kPi / 2}) == doctest::Approx(kPi / 2));
        CHECK(wrap_phi(-0.5) == doctest::Approx(2.0 * kPi - 0.5));
    }
}
