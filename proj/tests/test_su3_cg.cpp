#include <doctest.h>

#include <cmath>

#include "tomo/fixtures.hpp"
#include "tomo/su3_cg.hpp"

using namespace tomo;

TEST_CASE("SU(2) Clebsch-Gordan values") {
    CHECK(su2_cg(1, 1, 1, -1, 0, 0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(su2_cg(1, -1, 1, 1, 0, 0) == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(su2_cg(1, 1, 1, 1, 2, 2) == doctest::Approx(1.0));
    CHECK(su2_cg(2, 0, 2, 0, 0, 0) == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(su2_cg(2, 2, 2, 0, 2, 2) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(su2_cg(2, 2, 2, 0, 0, 0) == 0.0);
}

TEST_CASE("product decomposition") {
    CHECK(decompose_product(2) == std::vector<int>{2, 1, 0});
    long total = 0;
    for (int s : decompose_product(3)) total += dimension(s, s);
    CHECK(total == dimension(3, 0) * dimension(3, 0));
}

TEST_CASE("coupled basis is orthonormal and complete") {
    for (int A = 1; A <= 3; ++A) {
        const CGTable t = build_cg_table(A);
        CHECK(t.unitarity_error() < 1e-10);
        long cols = 0;
        for (const auto& ir : t.irreps) {
            cols += ir.basis.cols();
            CHECK(ir.basis.cols() == dimension(ir.sigma, ir.sigma));
            CHECK(ir.generators.commutation_error() < 1e-10);
            const CoupledLabel& ref = ir.labels.at(ir.ref_index);
            CHECK(ref.N1 == ir.sigma);
            CHECK(ref.twoI3 == 0);
        }
        CHECK(cols == dimension(A, 0) * dimension(A, 0));
    }
}

TEST_CASE("generated A=1 tables match the reference rows") {
    const CGTable t = build_cg_table(1);
    int n = 0;
    for (const auto& row : fixtures::cg_rows()) {
        if (row.A != 1) continue;
        ++n;
        CHECK(reduced_cg(t, row.sigma, row.N1, row.twoI3, row.n1, row.twoI1, row.nustar1, row.twoI2) ==
              doctest::Approx(row.value).epsilon(1e-12));
    }
    CHECK(n == 7);
}

TEST_CASE("signed-square parsing") {
    CHECK(fixtures::parse_signed_square("-2/3") == doctest::Approx(-std::sqrt(2.0 / 3.0)));
    CHECK(fixtures::parse_signed_square("+1") == doctest::Approx(1.0));
    CHECK(fixtures::parse_signed_square("1/6") == doctest::Approx(std::sqrt(1.0 / 6.0)));
    CHECK_THROWS(fixtures::parse_signed_square("-2/x"));
    CHECK_THROWS(fixtures::parse_signed_square(""));
}

TEST_CASE("missing reduced entries throw") {
    const CGTable t = build_cg_table(1);
    CHECK_THROWS(reduced_cg(t, 1, 7, 0, 0, 0, 0, 0));
}
