#include <doctest.h>

#include <cmath>
#include <random>

#include "tomo/dynamics.hpp"
#include "tomo/fixtures.hpp"

using namespace tomo;

namespace {
PulseParams random_tau(std::mt19937_64& g, double span) {
    std::uniform_real_distribution<double> u(-span, span);
    return {u(g), u(g), u(g), u(g)};
}
}  // namespace

TEST_CASE("pulse sequence reproduces the closed-form single-atom matrix") {
    std::mt19937_64 g(5);
    for (int t = 0; t < 10; ++t) {
        const PulseParams tau = random_tau(g, M_PI);
        CHECK(max_abs(nondeg_sequence(1, tau) - fixtures::nondeg_matrix(tau)) < 1e-12);
    }
}

TEST_CASE("tau to Euler survives wide parameter ranges") {
    std::mt19937_64 g(6);
    for (int t = 0; t < 50; ++t) {
        const PulseParams tau = random_tau(g, 12.0);
        const SU3Euler e = tau_to_euler(tau);
        CHECK(e.beta1 >= 0.0);
        CHECK(e.beta1 <= M_PI + 1e-12);
        CHECK(e.alpha2 >= 0.0);
        CHECK(e.alpha2 < 2 * M_PI);
        const CMat u = nondeg_sequence(1, tau);
        CHECK(max_abs(u - nondeg_global_phase(tau) * su3_element(symmetric_generators(1), e)) < 1e-11);
        // the many-atom sequence is the same group element
        CHECK(max_abs(nondeg_sequence(2, tau) -
                      std::pow(nondeg_global_phase(tau), 2) * su3_element(symmetric_generators(2), e)) < 1e-11);
    }
}

TEST_CASE("Lambda tilde pulses compose into an R23 rotation") {
    const double a = 0.37, b = 1.21, c = -0.9;
    for (int A = 1; A <= 3; ++A) {
        const CMat lhs = lambda_dispersive_pulse(A, a) * lambda_resonant_pulse(A, b) * lambda_dispersive_pulse(A, c);
        const CMat rhs = lambda_tilde_sequence(A, {-2 * a + M_PI / 2, 2 * b, -2 * c - M_PI / 2});
        CHECK(max_abs(lhs - rhs) < 1e-12);
        const CMat t = lambda_T12(A);
        CHECK(unitarity_error(t) < 1e-13);
        CHECK(max_abs(lambda_pulse_sequence(A, {a, b, c}) - t * lambda_tilde_sequence(A, {a, b, c}) * t.adjoint()) <
              1e-12);
    }
}

TEST_CASE("Xi generators form an so(3) triple") {
    for (int A = 1; A <= 4; ++A) {
        const XiGenerators x = xi_generators(A);
        CHECK(x.su2().relation_error() < 1e-12);
        CHECK(max_abs(x.lx - 0.5 * (x.lplus + x.lminus)) < 1e-14);
        CHECK(max_abs(commutator(x.casimir(), x.lz)) < 1e-12);
        // the Hamiltonian stays inside the algebra
        CHECK(max_abs(commutator(xi_hamiltonian(A, 0.4, 0.9), x.casimir())) < 1e-12);
    }
}

TEST_CASE("Xi physical sequence is a shifted Euler rotation") {
    const double a = 0.5, b = 2.1, c = -1.3;
    for (int A = 1; A <= 3; ++A)
        CHECK(max_abs(xi_physical_sequence(A, a, b, c) - xi_pulse_sequence(A, {a - M_PI / 2, b, c + M_PI / 2})) < 1e-12);
}

TEST_CASE("LM labels and closed-form states") {
    const auto l = lm_labels(2);
    REQUIRE(l.size() == 6);
    CHECK(l[0].L == 2);
    CHECK(l[0].M == 2);
    CHECK(l[4].M == -2);
    CHECK(l[5].L == 0);
    for (int A = 1; A <= 4; ++A) CHECK(unitarity_error(lm_basis_matrix(A)) < 1e-12);
    // |A,-A> is |0 0 A>
    const CVec v = lm_state(2, 2, -2);
    CHECK(std::abs(std::abs(v(5)) - 1.0) < 1e-14);
    CHECK_THROWS(lm_state(2, 1, 0));
}

TEST_CASE("config names") {
    for (ConfigKind c : {ConfigKind::NonDegenerate, ConfigKind::Lambda, ConfigKind::Xi})
        CHECK(parse_config(config_name(c)) == c);
    CHECK_THROWS(parse_config("vee"));
}
