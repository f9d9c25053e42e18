#include "tomo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace tomo {

Rule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be >= 1");
    if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: a, b must exceed -1");
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        diag(k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + a + b;
        sub(k - 1) = std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0)));
    }
    const double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) /
                       std::tgamma(a + b + 2.0);
    Rule r;
    if (n == 1) {
        r.x = {diag(0)};
        r.w = {mu0};
        return r;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n - 1));
    if (es.info() != Eigen::Success) throw std::runtime_error("gauss_jacobi: eigensolver failed");
    r.x.resize(n);
    r.w.resize(n);
    for (int k = 0; k < n; ++k) {
        r.x[k] = es.eigenvalues()(k);
        const double v = es.eigenvectors()(0, k);
        r.w[k] = mu0 * v * v;
    }
    return r;
}

Rule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

double Axis::weight_sum() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

Axis uniform_axis(int n, double period) {
    if (n < 1) throw std::invalid_argument("uniform_axis: n must be >= 1");
    Axis ax;
    for (int k = 0; k < n; ++k) {
        ax.nodes.push_back(period * k / n);
        ax.weights.push_back(period / n);
    }
    return ax;
}

Axis polar_axis(int n) {
    const Rule r = gauss_legendre(n);
    Axis ax;
    for (int k = 0; k < n; ++k) {
        ax.nodes.push_back(std::acos(std::clamp(r.x[k], -1.0, 1.0)));
        ax.weights.push_back(r.w[k]);
    }
    return ax;
}

Axis half_angle_axis(int n) {
    // int_0^pi f cos(b/2) sin^3(b/2) db = int_0^1 f u du,  u = (1 + x)/2
    const Rule r = gauss_jacobi(n, 0.0, 1.0);
    Axis ax;
    for (int k = 0; k < n; ++k) {
        const double u = std::clamp(0.5 * (1.0 + r.x[k]), 0.0, 1.0);
        ax.nodes.push_back(2.0 * std::asin(std::sqrt(u)));
        ax.weights.push_back(0.25 * r.w[k]);
    }
    return ax;
}

Axis single_node_axis(double node, double weight) {
    Axis ax;
    ax.nodes = {node};
    ax.weights = {weight};
    return ax;
}

TensorGrid::TensorGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
    size_ = axes_.empty() ? 0 : 1;
    for (const Axis& a : axes_) {
        if (a.size() == 0) throw std::invalid_argument("TensorGrid: empty axis");
        size_ *= static_cast<std::size_t>(a.size());
    }
}

double TensorGrid::node(std::size_t k, double* coords) const {
    if (k >= size_) throw std::out_of_range("TensorGrid: node index out of range");
    double w = 1.0;
    for (int ax = rank() - 1; ax >= 0; --ax) {
        const std::size_t n = static_cast<std::size_t>(axes_[ax].size());
        const std::size_t i = k % n;
        k /= n;
        coords[ax] = axes_[ax].nodes[i];
        w *= axes_[ax].weights[i];
    }
    return w;
}

double TensorGrid::weight_sum() const {
    double s = axes_.empty() ? 0.0 : 1.0;
    for (const Axis& a : axes_) s *= a.weight_sum();
    return s;
}

}  // namespace tomo
