#include <doctest.h>

#include "tomo/su3_algebra.hpp"

using namespace tomo;

TEST_CASE("basis order and closed-form index") {
    const BasisIndexMap b(2);
    REQUIRE(b.size() == 6);
    CHECK(b.state(0) == OccupationState{2, 0, 0});
    CHECK(b.state(1) == OccupationState{1, 1, 0});
    CHECK(b.state(2) == OccupationState{1, 0, 1});
    CHECK(b.state(3) == OccupationState{0, 2, 0});
    CHECK(b.state(5) == OccupationState{0, 0, 2});
    for (int A = 0; A <= 6; ++A) {
        const BasisIndexMap m(A);
        CHECK(m.size() == dimension(A, 0));
        for (int k = 0; k < m.size(); ++k) CHECK(m.index(m.state(k)) == k);
    }
    CHECK_THROWS_AS(b.index({3, 0, 0}), std::out_of_range);
    CHECK_THROWS_AS(b.index({1, 0, 0}), std::out_of_range);
}

TEST_CASE("dimension formula") {
    CHECK(dimension(1, 0) == 3);
    CHECK(dimension(1, 1) == 8);
    CHECK(dimension(2, 2) == 27);
    CHECK(dimension(3, 3) == 64);
    CHECK(dimension(2, 1) == 15);
}

TEST_CASE("collective operators") {
    const BasisIndexMap b(2);
    const CMat s12 = collective_operator(2, 1, 2);
    // S12 |0 2 0> = sqrt(2*1) |1 1 0>
    CHECK(std::abs(s12(b.index({1, 1, 0}), b.index({0, 2, 0})) - std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(s12(b.index({2, 0, 0}), b.index({1, 1, 0})) - std::sqrt(2.0)) < 1e-15);
    const CMat n1 = collective_operator(2, 1, 1);
    CHECK(std::abs(n1(0, 0) - 2.0) < 1e-15);
    CHECK_THROWS_AS(collective_operator(2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(collective_operator(2, 1, 4), std::invalid_argument);
}

TEST_CASE("commutation relations and Casimir") {
    for (int A = 1; A <= 4; ++A) {
        const GeneratorSet s = symmetric_generators(A), c = conjugate_generators(A);
        CHECK(s.commutation_error() < 1e-12);
        CHECK(c.commutation_error() < 1e-12);
        // C2 of (A,0) in this normalization: sum S_ij S_ji = A(A+2) on the symmetric irrep
        const CMat cs = s.casimir();
        CHECK((cs - double(A * (A + 2)) * CMat::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("conjugate generators: S-bar_ij = -D S_ij^T D") {
    const BasisIndexMap b(2);
    const CMat s = collective_operator(2, 2, 3), sb = conjugate_generator(2, 2, 3);
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j) {
            const double sign = ((b.state(i).n2 + b.state(j).n2) % 2) ? -1.0 : 1.0;
            CHECK(std::abs(sb(i, j) + sign * s(j, i)) < 1e-15);
        }
}

TEST_CASE("weights and SU(2) sublabels") {
    CHECK(weight({2, 1, 0}) == std::pair<int, int>{1, 1});
    const Su2Label l = su2_sublabels({1, 2, 0}, LevelPair::P23);
    CHECK(l.twoI == 2);
    CHECK(l.twoM == 2);
    const Su2Label k = su2_sublabels({1, 2, 0}, LevelPair::P12);
    CHECK(k.twoI == 3);
    CHECK(k.twoM == -1);
}

TEST_CASE("operator role checks") {
    OperatorMatrix u{CMat::Identity(3, 3), MatrixRole::Unitary};
    CHECK_NOTHROW(u.check());
    OperatorMatrix bad{2.0 * CMat::Identity(3, 3), MatrixRole::Density};
    CHECK_THROWS_AS(bad.check(), std::domain_error);
}
