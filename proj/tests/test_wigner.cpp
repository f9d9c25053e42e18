#include <doctest.h>

#include <cmath>

#include "tomo/quadrature.hpp"
#include "tomo/su3_algebra.hpp"
#include "tomo/wigner.hpp"

using namespace tomo;

TEST_CASE("small d closed forms") {
    const double b = 0.83;
    CHECK(su2_small_d(1, 1, 1, b) == doctest::Approx(std::cos(b / 2)).epsilon(1e-15));
    CHECK(su2_small_d(1, 1, -1, b) == doctest::Approx(-std::sin(b / 2)).epsilon(1e-15));
    CHECK(su2_small_d(2, 0, 0, b) == doctest::Approx(std::cos(b)).epsilon(1e-15));
    CHECK(su2_small_d(2, 2, 0, b) == doctest::Approx(-std::sin(b) / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(su2_small_d(2, 2, 2, b) == doctest::Approx(0.5 * (1 + std::cos(b))).epsilon(1e-15));
    CHECK_THROWS_AS(su2_small_d(2, 1, 0, b), std::invalid_argument);
}

TEST_CASE("spin rotation matrices equal Wigner D") {
    const SU2Euler e{0.4, 1.1, -2.3};
    for (int twoJ = 0; twoJ <= 6; ++twoJ) {
        const CMat r = su2_rotation(spin_generators(twoJ), e);
        for (int i = 0; i <= twoJ; ++i)
            for (int k = 0; k <= twoJ; ++k)
                CHECK(std::abs(r(i, k) - su2_D(twoJ, twoJ - 2 * i, twoJ - 2 * k, e)) < 1e-13);
    }
}

TEST_CASE("rotor rejects a broken triple") {
    Su2Generators g = spin_generators(2);
    g.jplus *= 2.0;
    CHECK_THROWS_AS(Su2Rotor{g}, std::invalid_argument);
}

TEST_CASE("SU(3) elements are unitary with unit determinant") {
    const SU3Euler e{0.3, 1.2, 2.2, 4.1, 0.7, 1.9, 2.5, 5.9};
    for (int A = 1; A <= 3; ++A) {
        const CMat u = su3_element(symmetric_generators(A), e);
        CHECK(unitarity_error(u) < 1e-12);
        CHECK(std::abs(u.determinant() - cplx(1.0)) < 1e-11);
        const Su3Evaluator ev(symmetric_generators(A));
        CRow row = CRow::Unit(u.cols(), 0);
        ev.apply_right(row, e);
        CHECK((row - u.row(0)).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("Gauss-Jacobi rules are exact to degree 2n-1") {
    const Rule r = gauss_jacobi(5, 0.0, 1.0);
    // int_{-1}^{1} x^k (1 + x) dx
    for (int k = 0; k <= 9; ++k) {
        double q = 0.0;
        for (std::size_t i = 0; i < r.x.size(); ++i) q += r.w[i] * std::pow(r.x[i], k);
        const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 2.0 / (k + 2);
        CHECK(q == doctest::Approx(exact).epsilon(1e-13));
    }
    const Rule g = gauss_legendre(4);
    double s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], 6);
    CHECK(s == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("grid volumes") {
    CHECK(su3_quadrature_grid(1).weight_sum() == doctest::Approx(su3_group_volume()).epsilon(1e-12));
    CHECK(su3_reconstruction_grid(2).weight_sum() == doctest::Approx(1024 * std::pow(M_PI, 5)).epsilon(1e-12));
    CHECK(su2_quadrature_grid(4).weight_sum() == doctest::Approx(8 * M_PI * M_PI).epsilon(1e-12));
    const GridSpec s = su3_grid_spec(2);
    CHECK(s.phase_nodes == 13);
    CHECK(s.beta_nodes == 7);
    CHECK(su3_quadrature_grid(1).size() == std::size_t(9 * 9 * 9 * 9 * 9) * 5 * 5 * 5);
}

TEST_CASE("SU(2) D orthogonality on the SU(2) grid") {
    const GroupGrid g = su2_quadrature_grid(4);
    double coords[3];
    cplx s_same = 0.0, s_cross = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double w = g.node(k, coords);
        const SU2Euler e{coords[0], coords[1], coords[2]};
        s_same += w * std::conj(su2_D(4, 2, -2, e)) * su2_D(4, 2, -2, e);
        s_cross += w * std::conj(su2_D(4, 2, -2, e)) * su2_D(2, 2, -2, e);
    }
    CHECK(std::abs(s_same - 8 * M_PI * M_PI / 5.0) < 1e-12);
    CHECK(std::abs(s_cross) < 1e-12);
}

TEST_CASE("grid kind names round trip") {
    for (GridKind k : {GridKind::Su3Full, GridKind::Su3Reduced, GridKind::Su2})
        CHECK(parse_grid_kind(grid_kind_name(k)) == k);
    CHECK_THROWS(parse_grid_kind("bogus"));
}
