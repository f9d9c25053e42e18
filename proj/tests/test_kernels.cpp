#include <doctest.h>

#include <cstring>

#include "tomo/kernels.hpp"
#include "tomo/su3_cg.hpp"
#include "tomo/tomography.hpp"

using namespace tomo;

namespace {
bool bit_equal(const CMat& a, const CMat& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), sizeof(cplx) * static_cast<std::size_t>(a.size())) == 0;
}
}  // namespace

TEST_CASE("factored Gram equals the node-by-node sum") {
    const GroupGrid small(GridSpec{GridKind::Su3Full, 3, 2});
    const GeneratorSet a = symmetric_generators(1), b = conjugate_generators(1);
    for (const auto& pair : {std::pair{a, a}, std::pair{a, b}, std::pair{b, b}}) {
        const CMat f = kernels::su3_gram_factored(pair.first, pair.second, small);
        const CMat s = kernels::su3_gram_bruteforce(pair.first, pair.second, small);
        CHECK(max_abs(f - s) < 1e-9 * std::max(1.0, max_abs(s)));
    }
}

TEST_CASE("node reductions are identical for every thread count") {
    const std::size_t n = 10 * kernels::kChunk + 17;
    auto add = [](std::size_t k, CVec& acc) {
        acc(0) += std::sin(0.001 * double(k));
        acc(1) += cplx(1.0 / (1.0 + double(k)), std::cos(double(k)));
    };
    const int orig = kernels::max_threads();
    kernels::set_threads(1);
    const CVec one = kernels::reduce_nodes(n, 2, add);
    for (int t : {2, 3, 4, 8}) {
        kernels::set_threads(t);
        CHECK(bit_equal(kernels::reduce_nodes(n, 2, add), one));
    }
    const CVec serial = kernels::reduce_nodes_serial(n, 2, add);
    CHECK((serial - one).cwiseAbs().maxCoeff() < 1e-10);
    auto f = [](std::size_t k) { return std::exp(-1e-4 * double(k)); };
    CHECK(kernels::map_nodes(n, f) == kernels::map_nodes_serial(n, f));
    kernels::set_threads(orig);
}

TEST_CASE("exceptions inside parallel loops reach the caller") {
    auto bad = [](std::size_t k, CVec& acc) {
        if (k == 5000) throw std::runtime_error("node 5000");
        acc(0) += 1.0;
    };
    CHECK_THROWS_WITH_AS(kernels::reduce_nodes(8000, 1, bad), "node 5000", std::runtime_error);
}

TEST_CASE("parallel and serial simulation and reconstruction agree") {
    const DensityMatrix rho = random_density_matrix(6, 3);
    const GridSpec g = default_grid(ConfigKind::NonDegenerate, 2);
    const TomogramSamples sp = simulate_samples(rho, ConfigKind::NonDegenerate, g, true);
    const TomogramSamples ss = simulate_samples(rho, ConfigKind::NonDegenerate, g, false);
    CHECK(sp.omega == ss.omega);
    const CGTable t = build_cg_table(2);
    const CMat rp = reconstruct_nondeg(sp, t, Prefactor::Dimension, true).rho.m;
    const CMat rs = reconstruct_nondeg(sp, t, Prefactor::Dimension, false).rho.m;
    CHECK(max_abs(rp - rs) < 1e-12);
    const int orig = kernels::max_threads();
    kernels::set_threads(1);
    const CMat r1 = reconstruct_nondeg(sp, t, Prefactor::Dimension, true).rho.m;
    kernels::set_threads(orig);
    CHECK(bit_equal(r1, rp));
}
