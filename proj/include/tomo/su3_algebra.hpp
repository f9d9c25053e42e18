#pragma once

#include <array>
#include <utility>
#include <vector>

#include "tomo/linalg.hpp"

namespace tomo {

struct OccupationState {
    int n1 = 0, n2 = 0, n3 = 0;

    int operator[](int level) const;  // level in 1..3
    int total() const { return n1 + n2 + n3; }
    // n* = (A - n1, A - n2, A - n3)
    OccupationState starred(int A) const { return {A - n1, A - n2, A - n3}; }
    bool operator==(const OccupationState& o) const { return n1 == o.n1 && n2 == o.n2 && n3 == o.n3; }
};

// Symmetric basis of (A,0): n1 descending, then n2 descending.
class BasisIndexMap {
public:
    explicit BasisIndexMap(int A);

    int A() const { return A_; }
    int size() const { return static_cast<int>(states_.size()); }
    const OccupationState& state(int index) const { return states_.at(index); }
    const std::vector<OccupationState>& states() const { return states_; }
    // throws std::out_of_range for states outside the basis
    int index(const OccupationState& s) const;

private:
    int A_;
    std::vector<OccupationState> states_;
};

BasisIndexMap enumerate_basis(int A);

enum class MatrixRole { Generator, Unitary, Density, Projector };

struct OperatorMatrix {
    CMat matrix;
    MatrixRole role = MatrixRole::Generator;

    // throws std::domain_error when the role invariant fails
    void check(double tol = 1e-12) const;
};

// Levels are 1-based, as in S_ij = a_i^dagger a_j.
CMat collective_operator(int A, int i, int j);
// Generators of the conjugate irrep (0,A): -D S_ij^T D with D = diag((-1)^{n2}),
// same index order as (A,0); index k carries the label n*(k).
CMat conjugate_generator(int A, int i, int j);

// 3x3 table of generator matrices of one irrep.
class GeneratorSet {
public:
    GeneratorSet() = default;
    explicit GeneratorSet(std::array<std::array<CMat, 3>, 3> ops);

    const CMat& op(int i, int j) const { return ops_[i - 1][j - 1]; }
    int dim() const { return static_cast<int>(ops_[0][0].rows()); }
    // max deviation from [S_ij,S_kl] = d_jk S_il - d_il S_kj
    double commutation_error() const;
    // Sum_ij S_ij S_ji
    CMat casimir() const;

private:
    std::array<std::array<CMat, 3>, 3> ops_;
};

GeneratorSet symmetric_generators(int A);
GeneratorSet conjugate_generators(int A);

// (h1, h2) = (n1 - n2, n2 - n3)
std::pair<int, int> weight(const OccupationState& s);

enum class LevelPair { P12, P23 };

struct Su2Label {
    int twoI = 0, twoM = 0;
};
Su2Label su2_sublabels(const OccupationState& s, LevelPair modes);

// dimension of the SU(3) irrep (lambda, mu)
long dimension(int lambda, int mu);

}  // namespace tomo
