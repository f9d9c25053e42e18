#pragma once

#include <vector>

#include "tomo/linalg.hpp"
#include "tomo/su3_algebra.hpp"

namespace tomo {

// sigma values in (A,0) x (0,A) = (A,A) + ... + (0,0)
std::vector<int> decompose_product(int A);

// Condon-Shortley C^{J M}_{j1 m1, j2 m2}, all arguments doubled; 0 off selection rules.
double su2_cg(int twoj1, int twom1, int twoj2, int twom2, int twoJ, int twoM);

struct CoupledLabel {
    int sigma = 0;
    int N1 = 0, N2 = 0, N3 = 0;
    int twoI3 = 0, twoM3 = 0;
};

struct ReducedRow {
    int n1 = 0, twoI1 = 0, nustar1 = 0, twoI2 = 0;
    double value = 0.0;
};

// reduced coefficients of one SU(2)_23 multiplet (N1, I3) of (sigma, sigma)
struct ReducedMultiplet {
    int sigma = 0, N1 = 0, twoI3 = 0;
    std::vector<ReducedRow> rows;  // n1 descending
};

// Coupled basis of one (sigma, sigma) inside the product space (index a*d + b,
// a over (A,0), b over (0,A)).
struct CoupledIrrep {
    int sigma = 0;
    RMat basis;                       // d^2 x (sigma+1)^3, orthonormal columns
    std::vector<CoupledLabel> labels; // column labels
    int ref_index = -1;               // (sigma sigma sigma), I3 = 0, M3 = 0
    GeneratorSet generators;          // S^tot restricted to the columns
};

class CGTable {
public:
    int A = 0;
    std::vector<CoupledIrrep> irreps;        // sigma = A, A-1, ..., 0
    std::vector<ReducedMultiplet> reduced;   // all multiplets, all sigma

    const CoupledIrrep& irrep(int sigma) const;
    // full coefficient <n ; nu* | (sigma) label>
    double coefficient(int sigma, int column, int a, int b) const;
    // max |V^T V - 1| over the stacked coupled basis
    double unitarity_error() const;
};

CGTable build_cg_table(int A);

// reduced coefficient, recomputed from the full table by dividing out the SU(2)
// coupling; throws if every SU(2) coefficient vanishes or no entry exists
double reduced_cg(const CGTable& t, int sigma, int N1, int twoI3, int n1, int twoI1, int nustar1, int twoI2);

// S^tot_ij restricted to the (sigma, sigma) columns; throws if the span is not invariant
GeneratorSet coupled_irrep_generators(const CGTable& t, int sigma);

// product-space generators kron(S, 1) + kron(1, Sbar)
GeneratorSet product_generators(int A);

}  // namespace tomo
