#include "tomo/wigner.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace tomo {

namespace {

double factorial(int n) {
    static const std::array<double, 171> table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (int k = 1; k < 171; ++k) t[k] = t[k - 1] * k;
        return t;
    }();
    if (n < 0 || n > 170) throw std::out_of_range("factorial argument out of range");
    return table[n];
}

bool same_parity(int a, int b) { return ((a - b) % 2) == 0; }

}  // namespace

double Su2Generators::relation_error() const {
    double e = max_abs(commutator(jz, jplus) - jplus);
    e = std::max(e, max_abs(commutator(jz, jminus) + jminus));
    e = std::max(e, max_abs(commutator(jplus, jminus) - 2.0 * jz));
    return e;
}

Su2Rotor::Su2Rotor(const Su2Generators& g) {
    const double scale = std::max({1.0, max_abs(g.jz), max_abs(g.jplus)});
    if (g.relation_error() > 1e-12 * scale * scale)
        throw std::invalid_argument("su2 rotation: generators violate su(2) relations");
    z_ = HermitianExponential(g.jz);
    const CMat jy = (g.jplus - g.jminus) / cplx(0.0, 2.0);
    y_ = HermitianExponential(jy);
}

CMat Su2Rotor::matrix(const SU2Euler& e) const {
    return z_.matrix(e.alpha) * y_.matrix(e.beta) * z_.matrix(e.gamma);
}

void Su2Rotor::apply_right(CRow& row, const SU2Euler& e) const {
    z_.apply_right(row, e.alpha);
    y_.apply_right(row, e.beta);
    z_.apply_right(row, e.gamma);
}

CMat su2_rotation(const Su2Generators& g, const SU2Euler& e) { return Su2Rotor(g).matrix(e); }

Su2Generators spin_generators(int twoJ) {
    if (twoJ < 0) throw std::invalid_argument("spin_generators: negative spin");
    const int d = twoJ + 1;
    Su2Generators g;
    g.jz = CMat::Zero(d, d);
    g.jplus = CMat::Zero(d, d);
    const double j = 0.5 * twoJ;
    for (int k = 0; k < d; ++k) {
        const double m = j - k;
        g.jz(k, k) = m;
        if (k > 0) g.jplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    g.jminus = g.jplus.adjoint();
    return g;
}

double su2_small_d(int twoJ, int twoM, int twoMp, double beta) {
    if (twoJ < 0 || std::abs(twoM) > twoJ || std::abs(twoMp) > twoJ || !same_parity(twoJ, twoM) ||
        !same_parity(twoJ, twoMp))
        throw std::invalid_argument("su2_small_d: inconsistent (J, m, m') labels");
    // d^J_{m m'} with m the row (bra) label
    const int jpm = (twoJ + twoM) / 2, jmm = (twoJ - twoM) / 2;
    const int jpp = (twoJ + twoMp) / 2, jmp = (twoJ - twoMp) / 2;
    const int dm = (twoM - twoMp) / 2;
    const double pre = std::sqrt(factorial(jpm) * factorial(jmm) * factorial(jpp) * factorial(jmp));
    const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
    double sum = 0.0;
    for (int k = std::max(0, -dm); k <= std::min(jpp, jmm); ++k) {
        const double den = factorial(jpp - k) * factorial(k) * factorial(dm + k) * factorial(jmm - k);
        const double term = std::pow(c, twoJ - dm - 2 * k + 0) * std::pow(s, dm + 2 * k) / den;
        sum += ((dm + k) % 2 ? -1.0 : 1.0) * term;
    }
    return pre * sum;
}

cplx su2_D(int twoJ, int twoM, int twoMp, const SU2Euler& e) {
    const double d = su2_small_d(twoJ, twoM, twoMp, e.beta);
    return std::polar(d, -0.5 * twoM * e.alpha - 0.5 * twoMp * e.gamma);
}

Su2Generators su3_subalgebra(const GeneratorSet& g, Su3Factor kind) {
    Su2Generators s;
    if (kind == Su3Factor::R23) {
        s.jz = 0.5 * (g.op(2, 2) - g.op(3, 3));
        s.jplus = g.op(2, 3);
        s.jminus = g.op(3, 2);
    } else {
        s.jz = 0.5 * (g.op(1, 1) - g.op(2, 2));
        s.jplus = g.op(1, 2);
        s.jminus = g.op(2, 1);
    }
    return s;
}

CMat su3_rotation_factor(const GeneratorSet& g, Su3Factor kind, const SU2Euler& e) {
    return su2_rotation(su3_subalgebra(g, kind), e);
}

Su3Evaluator::Su3Evaluator(const GeneratorSet& g)
    : r12_(su3_subalgebra(g, Su3Factor::R12)), r23_(su3_subalgebra(g, Su3Factor::R23)) {}

CMat Su3Evaluator::factor(Su3Factor kind, const SU2Euler& e) const {
    return kind == Su3Factor::R12 ? r12_.matrix(e) : r23_.matrix(e);
}

CMat Su3Evaluator::element(const SU3Euler& e) const {
    return r23_.matrix({e.alpha1, e.beta1, e.gamma1}) * r12_.matrix({e.alpha2, e.beta2, e.alpha2}) *
           r23_.matrix({e.alpha3, e.beta3, e.gamma3});
}

void Su3Evaluator::apply_right(CRow& row, const SU3Euler& e) const {
    r23_.apply_right(row, {e.alpha1, e.beta1, e.gamma1});
    r12_.apply_right(row, {e.alpha2, e.beta2, e.alpha2});
    r23_.apply_right(row, {e.alpha3, e.beta3, e.gamma3});
}

CMat su3_element(const GeneratorSet& g, const SU3Euler& e) { return Su3Evaluator(g).element(e); }

cplx su3_D(const GeneratorSet& g, int row, int col, const SU3Euler& e) {
    if (row < 0 || col < 0 || row >= g.dim() || col >= g.dim())
        throw std::out_of_range("su3_D: index out of range");
    CRow r = CRow::Zero(g.dim());
    r(row) = 1.0;
    Su3Evaluator(g).apply_right(r, e);
    return r(col);
}

double invariant_measure_weight(const SU3Euler& e) {
    const double h = 0.5 * e.beta2;
    return std::sin(e.beta1) * std::cos(h) * std::pow(std::sin(h), 3) * std::sin(e.beta3);
}

double su3_group_volume() { return 1024.0 * std::pow(M_PI, 5); }
double su2_group_volume() { return 8.0 * M_PI * M_PI; }

const char* grid_kind_name(GridKind k) {
    switch (k) {
        case GridKind::Su3Full: return "su3-full";
        case GridKind::Su3Reduced: return "su3-reduced";
        case GridKind::Su2: return "su2";
    }
    return "?";
}

GridKind parse_grid_kind(const std::string& s) {
    if (s == "su3-full") return GridKind::Su3Full;
    if (s == "su3-reduced") return GridKind::Su3Reduced;
    if (s == "su2") return GridKind::Su2;
    throw std::invalid_argument("unknown grid kind '" + s + "'");
}

GroupGrid::GroupGrid(const GridSpec& spec) : spec_(spec) {
    if (spec.phase_nodes < 1 || spec.beta_nodes < 1)
        throw std::invalid_argument("grid node counts must be >= 1");
    const double four_pi = 4.0 * M_PI, two_pi = 2.0 * M_PI;
    const int np = spec.phase_nodes, nb = spec.beta_nodes;
    std::vector<Axis> axes;
    switch (spec.kind) {
        case GridKind::Su3Full:
            axes = {uniform_axis(np, four_pi), polar_axis(nb), uniform_axis(np, four_pi),
                    uniform_axis(np, two_pi), half_angle_axis(nb),
                    uniform_axis(np, four_pi), polar_axis(nb), uniform_axis(np, four_pi)};
            break;
        case GridKind::Su3Reduced:
            axes = {single_node_axis(0.0, four_pi), single_node_axis(0.5 * M_PI, 2.0),
                    single_node_axis(0.0, four_pi),
                    uniform_axis(np, two_pi), half_angle_axis(nb),
                    uniform_axis(np, four_pi), polar_axis(nb), uniform_axis(np, four_pi)};
            break;
        case GridKind::Su2:
            axes = {uniform_axis(np, two_pi), polar_axis(nb), uniform_axis(np, two_pi)};
            break;
    }
    tensor_ = TensorGrid(std::move(axes));
}

GridSpec su3_grid_spec(int A, GridKind kind) {
    if (A < 1) throw std::invalid_argument("SU(3) grid needs A >= 1");
    if (kind == GridKind::Su2) throw std::invalid_argument("su3_grid_spec: SU(2) kind requested");
    return {kind, 4 * A + 5, 2 * A + 3};
}

GridSpec su2_grid_spec(int twoMaxJ) {
    if (twoMaxJ < 0) throw std::invalid_argument("SU(2) grid needs maxJ >= 0");
    return {GridKind::Su2, 2 * twoMaxJ + 1, twoMaxJ + 1};
}

GroupGrid su3_quadrature_grid(int A) { return GroupGrid(su3_grid_spec(A, GridKind::Su3Full)); }
GroupGrid su3_reconstruction_grid(int A) { return GroupGrid(su3_grid_spec(A, GridKind::Su3Reduced)); }
GroupGrid su2_quadrature_grid(int twoMaxJ) { return GroupGrid(su2_grid_spec(twoMaxJ)); }

}  // namespace tomo
