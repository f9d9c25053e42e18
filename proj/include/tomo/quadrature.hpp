#pragma once

#include <cstddef>
#include <vector>

namespace tomo {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

// Golub-Welsch rules on [-1, 1].
Rule gauss_legendre(int n);
// weight (1 - x)^a (1 + x)^b, a, b > -1
Rule gauss_jacobi(int n, double a, double b);

struct Axis {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
    double weight_sum() const;
};

// n equally spaced nodes on [0, period), weight period / n
Axis uniform_axis(int n, double period);
// beta nodes for the measure sin(beta) d beta on [0, pi] (Gauss-Legendre in cos beta)
Axis polar_axis(int n);
// beta nodes for cos(beta/2) sin^3(beta/2) d beta on [0, pi]; Gauss-Jacobi in u = sin^2(beta/2)
Axis half_angle_axis(int n);
Axis single_node_axis(double node, double weight);

// Lazily indexed tensor product of axes; the last axis varies fastest.
class TensorGrid {
public:
    TensorGrid() = default;
    explicit TensorGrid(std::vector<Axis> axes);

    std::size_t size() const { return size_; }
    int rank() const { return static_cast<int>(axes_.size()); }
    const Axis& axis(int k) const { return axes_.at(k); }
    // writes rank() coordinates, returns the product weight
    double node(std::size_t k, double* coords) const;
    double weight_sum() const;

private:
    std::vector<Axis> axes_;
    std::size_t size_ = 0;
};

}  // namespace tomo
