#include "tomo/su3_algebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tomo {

int OccupationState::operator[](int level) const {
    switch (level) {
        case 1: return n1;
        case 2: return n2;
        case 3: return n3;
    }
    throw std::out_of_range("OccupationState: level must be 1, 2 or 3");
}

BasisIndexMap::BasisIndexMap(int A) : A_(A) {
    if (A < 0) throw std::invalid_argument("enumerate_basis: A must be >= 0");
    for (int n1 = A; n1 >= 0; --n1)
        for (int n2 = A - n1; n2 >= 0; --n2) states_.push_back({n1, n2, A - n1 - n2});
}

int BasisIndexMap::index(const OccupationState& s) const {
    if (s.n1 < 0 || s.n2 < 0 || s.n3 < 0 || s.total() != A_)
        throw std::out_of_range("BasisIndexMap: state not in basis");
    // offset of the n1 block: states with larger n1 come first
    int before = 0;
    for (int m = A_; m > s.n1; --m) before += A_ - m + 1;
    return before + (A_ - s.n1 - s.n2);
}

BasisIndexMap enumerate_basis(int A) { return BasisIndexMap(A); }

void OperatorMatrix::check(double tol) const {
    const CMat& m = matrix;
    if (m.rows() != m.cols()) throw std::domain_error("operator matrix not square");
    switch (role) {
        case MatrixRole::Generator: break;
        case MatrixRole::Projector:
            if (max_abs(m * m - m) > tol || hermiticity_error(m) > tol)
                throw std::domain_error("projector is not idempotent and Hermitian");
            break;
        case MatrixRole::Unitary:
            if (unitarity_error(m) > tol) throw std::domain_error("matrix is not unitary");
            break;
        case MatrixRole::Density: {
            if (hermiticity_error(m) > tol) throw std::domain_error("density matrix not Hermitian");
            if (std::abs(m.trace() - cplx(1.0)) > tol) throw std::domain_error("density matrix trace != 1");
            Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
            if (es.eigenvalues().minCoeff() < -tol) throw std::domain_error("density matrix not positive");
            break;
        }
    }
}

static void check_levels(int i, int j) {
    if (i < 1 || i > 3 || j < 1 || j > 3)
        throw std::invalid_argument("level indices must be in 1..3, got " + std::to_string(i) + "," +
                                    std::to_string(j));
}

CMat collective_operator(int A, int i, int j) {
    check_levels(i, j);
    const BasisIndexMap basis(A);
    const int d = basis.size();
    CMat m = CMat::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const OccupationState& n = basis.state(k);
        if (i == j) {
            m(k, k) = n[i];
            continue;
        }
        if (n[j] == 0) continue;
        std::array<int, 3> t{n.n1, n.n2, n.n3};
        t[j - 1] -= 1;
        t[i - 1] += 1;
        const int r = basis.index({t[0], t[1], t[2]});
        m(r, k) = std::sqrt(static_cast<double>(n[j] * (n[i] + 1)));
    }
    return m;
}

CMat conjugate_generator(int A, int i, int j) {
    const BasisIndexMap basis(A);
    const int d = basis.size();
    RVec sign(d);
    for (int k = 0; k < d; ++k) sign(k) = (basis.state(k).n2 % 2) ? -1.0 : 1.0;
    const CMat s = collective_operator(A, i, j);
    return -(sign.asDiagonal() * s.transpose() * sign.asDiagonal());
}

GeneratorSet::GeneratorSet(std::array<std::array<CMat, 3>, 3> ops) : ops_(std::move(ops)) {}

double GeneratorSet::commutation_error() const {
    double err = 0.0;
    const int d = dim();
    const CMat zero = CMat::Zero(d, d);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                for (int l = 1; l <= 3; ++l) {
                    CMat rhs = zero;
                    if (j == k) rhs += op(i, l);
                    if (i == l) rhs -= op(k, j);
                    err = std::max(err, max_abs(commutator(op(i, j), op(k, l)) - rhs));
                }
    return err;
}

CMat GeneratorSet::casimir() const {
    CMat c = CMat::Zero(dim(), dim());
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) c += op(i, j) * op(j, i);
    return c;
}

GeneratorSet symmetric_generators(int A) {
    std::array<std::array<CMat, 3>, 3> ops;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) ops[i - 1][j - 1] = collective_operator(A, i, j);
    return GeneratorSet(std::move(ops));
}

GeneratorSet conjugate_generators(int A) {
    std::array<std::array<CMat, 3>, 3> ops;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) ops[i - 1][j - 1] = conjugate_generator(A, i, j);
    return GeneratorSet(std::move(ops));
}

std::pair<int, int> weight(const OccupationState& s) { return {s.n1 - s.n2, s.n2 - s.n3}; }

Su2Label su2_sublabels(const OccupationState& s, LevelPair modes) {
    if (modes == LevelPair::P23) return {s.n2 + s.n3, s.n2 - s.n3};
    return {s.n1 + s.n2, s.n1 - s.n2};
}

long dimension(int lambda, int mu) {
    if (lambda < 0 || mu < 0) throw std::invalid_argument("dimension: labels must be >= 0");
    return static_cast<long>(lambda + 1) * (mu + 1) * (lambda + mu + 2) / 2;
}

}  // namespace tomo
