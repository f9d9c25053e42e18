#pragma once

#include <string>
#include <vector>

#include "tomo/linalg.hpp"
#include "tomo/su3_algebra.hpp"
#include "tomo/wigner.hpp"

namespace tomo {

struct PulseParams {
    double phi23 = 0.0, beta23 = 0.0, phi12 = 0.0, beta12 = 0.0;
};

enum class ConfigKind { NonDegenerate, Lambda, Xi };

const char* config_name(ConfigKind k);  // nondeg, lambda, xi
ConfigKind parse_config(const std::string& s);

// exp(-i beta (S_ij + S_ji))
CMat resonant_pulse(int A, LevelPair pair, double beta);
// exp(+i phi S_ll), level 1 or 3
CMat dispersive_pulse(int A, int level, double phi);
// U33^D(-phi23) U23^R(beta23) U11^D(phi12) U12^R(beta12)
CMat nondeg_sequence(int A, const PulseParams& tau);
// U = phase * Ubar with det Ubar = 1 (A = 1)
cplx nondeg_global_phase(const PulseParams& tau);
SU3Euler tau_to_euler(const PulseParams& tau);

// second-quantized rotation exp(theta (S21 - S12)), theta = -pi/4
CMat lambda_T12(int A);
CMat lambda_hamiltonian(int A, double Delta, double g);
// tilde-basis pulses
CMat lambda_resonant_pulse(int A, double x);    // exp(+i x (S23 + S32))
CMat lambda_dispersive_pulse(int A, double y);  // exp(+i y (S22 - S33))
CMat lambda_tilde_sequence(int A, const SU2Euler& e);  // R23(e) on tilde modes
// same rotation expressed in the occupational basis: T12 R23 T12^dagger
CMat lambda_pulse_sequence(int A, const SU2Euler& e);

struct XiGenerators {
    CMat lz, lx, lplus, lminus;

    CMat casimir() const;  // L^2
    Su2Generators su2() const { return {lz, lplus, lminus}; }
};

// Lz = S11 - S33, L- = sqrt2 (S21 + S32), Lx = (S12 + S21 + S23 + S32)/sqrt2
XiGenerators xi_generators(int A);
CMat xi_hamiltonian(int A, double Delta, double g);
// z-y-z rotation built on the so(3) generators, occupational basis
CMat xi_pulse_sequence(int A, const SU2Euler& e);
// Rz(a) Rx(b) Rz(c) with Rx(b) = exp(-i b Lx)
CMat xi_physical_sequence(int A, double a, double b, double c);

struct LMLabel {
    int L = 0, M = 0;
};

// L = A, A-2, ...; M = L, ..., -L
std::vector<LMLabel> lm_labels(int A);
// closed-form |LM> over the occupational basis, renormalized; eigenrelations asserted
CVec lm_state(int A, int L, int M);
// norm of the closed form before renormalization
double lm_formula_norm(int A, int L, int M);
// columns |LM> in lm_labels order
CMat lm_basis_matrix(int A);

}  // namespace tomo
