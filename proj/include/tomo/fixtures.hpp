#pragma once

#include <string>
#include <vector>

#include "tomo/dynamics.hpp"
#include "tomo/linalg.hpp"

namespace tomo::fixtures {

// "-2/3" -> -sqrt(2/3)
double parse_signed_square(const std::string& s);

struct CgRow {
    int A = 0, sigma = 0, N1 = 0, twoI3 = 0, n1 = 0, twoI1 = 0, nustar1 = 0, twoI2 = 0;
    double value = 0.0;
    std::string text;
};

// reference reduced coefficients for A = 1, 2
const std::vector<CgRow>& cg_rows();

struct LmTerm {
    double coef = 0.0;
    int p = 0, q = 0, r = 0;  // powers of a1^dagger, a2^dagger, a3^dagger
};

struct LmRow {
    int A = 0, L = 0, M = 0;
    std::vector<LmTerm> terms;

    CVec vector() const;  // over the occupational basis of (A,0)
};

// reference |LM> polynomials for A = 1, 2
const std::vector<LmRow>& lm_rows();

// closed-form single-atom pulse-sequence matrix
CMat nondeg_matrix(const PulseParams& tau);
// closed-form SU(3) factorization M1 M2 M3 with chi = (2 phi12 + phi23)/3
CMat ubar_matrix(const PulseParams& tau);

}  // namespace tomo::fixtures
