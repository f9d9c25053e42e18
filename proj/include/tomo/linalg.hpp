#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tomo {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using CRow = Eigen::RowVectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

// exp(-i t H) for a fixed Hermitian H, diagonalized once.
class HermitianExponential {
public:
    HermitianExponential() = default;
    explicit HermitianExponential(const CMat& h);

    int dim() const { return static_cast<int>(eval_.size()); }
    bool diagonal() const { return diagonal_; }

    CMat matrix(double t) const;
    // row <- row * exp(-i t H)
    void apply_right(CRow& row, double t) const;

private:
    bool diagonal_ = false;
    RVec eval_;
    CMat evec_;
};

CMat commutator(const CMat& a, const CMat& b);
double max_abs(const CMat& m);
// max |U U^dagger - 1|
double unitarity_error(const CMat& u);
double hermiticity_error(const CMat& m);

}  // namespace tomo
