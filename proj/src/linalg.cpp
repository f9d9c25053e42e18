#include "tomo/linalg.hpp"

#include <stdexcept>

namespace tomo {

HermitianExponential::HermitianExponential(const CMat& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("HermitianExponential: matrix not square");
    if (hermiticity_error(h) > 1e-12 * std::max(1.0, max_abs(h)))
        throw std::invalid_argument("HermitianExponential: matrix not Hermitian");
    const int n = static_cast<int>(h.rows());
    CMat off = h;
    off.diagonal().setZero();
    if (n == 0 || max_abs(off) == 0.0) {
        diagonal_ = true;
        eval_ = h.diagonal().real();
        return;
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    if (es.info() != Eigen::Success) throw std::runtime_error("HermitianExponential: eigensolver failed");
    eval_ = es.eigenvalues();
    evec_ = es.eigenvectors();
}

CMat HermitianExponential::matrix(double t) const {
    const int n = dim();
    CVec ph(n);
    for (int k = 0; k < n; ++k) ph(k) = std::polar(1.0, -t * eval_(k));
    if (diagonal_) return ph.asDiagonal();
    return evec_ * ph.asDiagonal() * evec_.adjoint();
}

void HermitianExponential::apply_right(CRow& row, double t) const {
    const int n = dim();
    if (diagonal_) {
        for (int k = 0; k < n; ++k) row(k) *= std::polar(1.0, -t * eval_(k));
        return;
    }
    CRow tmp = row * evec_;
    for (int k = 0; k < n; ++k) tmp(k) *= std::polar(1.0, -t * eval_(k));
    row.noalias() = tmp * evec_.adjoint();
}

CMat commutator(const CMat& a, const CMat& b) { return a * b - b * a; }

double max_abs(const CMat& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_error(const CMat& u) {
    return max_abs(u * u.adjoint() - CMat::Identity(u.rows(), u.cols()));
}

double hermiticity_error(const CMat& m) { return max_abs(m - m.adjoint()); }

}  // namespace tomo
