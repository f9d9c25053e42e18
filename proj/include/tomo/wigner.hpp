#pragma once

#include <cstddef>
#include <string>

#include "tomo/linalg.hpp"
#include "tomo/quadrature.hpp"
#include "tomo/su3_algebra.hpp"

namespace tomo {

struct SU2Euler {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

struct SU3Euler {
    double alpha1 = 0.0, beta1 = 0.0, gamma1 = 0.0;
    double alpha2 = 0.0, beta2 = 0.0;
    double alpha3 = 0.0, beta3 = 0.0, gamma3 = 0.0;

    static SU3Euler from_array(const double* p) { return {p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7]}; }
};

struct Su2Generators {
    CMat jz, jplus, jminus;

    // max deviation from [Jz,J+-] = +-J+-, [J+,J-] = 2Jz
    double relation_error() const;
};

// z-y-z rotations exp(-i a Jz) exp(-i b Jy) exp(-i c Jz) for a fixed generator triple.
class Su2Rotor {
public:
    Su2Rotor() = default;
    // throws std::invalid_argument if the triple fails the su(2) relations
    explicit Su2Rotor(const Su2Generators& g);

    int dim() const { return z_.dim(); }
    CMat matrix(const SU2Euler& e) const;
    void apply_right(CRow& row, const SU2Euler& e) const;

private:
    HermitianExponential z_, y_;
};

CMat su2_rotation(const Su2Generators& g, const SU2Euler& e);

// spin-J matrices in the basis m = J, J-1, ..., -J
Su2Generators spin_generators(int twoJ);

double su2_small_d(int twoJ, int twoM, int twoMp, double beta);
cplx su2_D(int twoJ, int twoM, int twoMp, const SU2Euler& e);

enum class Su3Factor { R12, R23 };

Su2Generators su3_subalgebra(const GeneratorSet& g, Su3Factor kind);
CMat su3_rotation_factor(const GeneratorSet& g, Su3Factor kind, const SU2Euler& e);

// R23(a1,b1,g1) R12(a2,b2,a2) R23(a3,b3,g3) with the exponentials prepared once.
class Su3Evaluator {
public:
    Su3Evaluator() = default;
    explicit Su3Evaluator(const GeneratorSet& g);

    int dim() const { return r23_.dim(); }
    CMat factor(Su3Factor kind, const SU2Euler& e) const;
    CMat element(const SU3Euler& e) const;
    // row <- row * U(e)
    void apply_right(CRow& row, const SU3Euler& e) const;

private:
    Su2Rotor r12_, r23_;
};

CMat su3_element(const GeneratorSet& g, const SU3Euler& e);
cplx su3_D(const GeneratorSet& g, int row, int col, const SU3Euler& e);

double invariant_measure_weight(const SU3Euler& e);
double su3_group_volume();  // 1024 pi^5
double su2_group_volume();  // 8 pi^2

enum class GridKind { Su3Full, Su3Reduced, Su2 };

struct GridSpec {
    GridKind kind = GridKind::Su3Full;
    int phase_nodes = 0;
    int beta_nodes = 0;

    bool operator==(const GridSpec& o) const {
        return kind == o.kind && phase_nodes == o.phase_nodes && beta_nodes == o.beta_nodes;
    }
    int params() const { return kind == GridKind::Su2 ? 3 : 8; }
};

const char* grid_kind_name(GridKind k);
GridKind parse_grid_kind(const std::string& s);

// Quadrature grid over SU(3) (8 angles) or SU(2) (3 angles).
class GroupGrid {
public:
    explicit GroupGrid(const GridSpec& spec);

    const GridSpec& spec() const { return spec_; }
    std::size_t size() const { return tensor_.size(); }
    int params() const { return spec_.params(); }
    double node(std::size_t k, double* coords) const { return tensor_.node(k, coords); }
    double weight_sum() const { return tensor_.weight_sum(); }
    const TensorGrid& tensor() const { return tensor_; }

private:
    GridSpec spec_;
    TensorGrid tensor_;
};

// minimal exact node counts
GridSpec su3_grid_spec(int A, GridKind kind = GridKind::Su3Full);
GridSpec su2_grid_spec(int twoMaxJ);

GroupGrid su3_quadrature_grid(int A);
// Same as the full grid except the three left R23 axes carry one node with the full
// axis weight. Exact for integrands that do not depend on the left R23 factor.
GroupGrid su3_reconstruction_grid(int A);
GroupGrid su2_quadrature_grid(int twoMaxJ);

}  // namespace tomo
