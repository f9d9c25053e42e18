#include "tomo/kernels.hpp"

#include <stdexcept>

namespace tomo::kernels {

void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {

// acc viewed as an n x n matrix: acc += w kron(conj(x), y)
void add_kron(CVec& acc, double w, const CMat& x, const CMat& y) {
    const long da = x.rows(), db = y.rows();
    const long n = da * db;
    Eigen::Map<CMat> out(acc.data(), n, n);
    for (long i = 0; i < da; ++i)
        for (long p = 0; p < da; ++p) {
            const cplx c = w * std::conj(x(i, p));
            if (c == 0.0) continue;
            out.block(i * db, p * db, db, db) += c * y;
        }
}

CMat as_matrix(const CVec& v, long n) { return Eigen::Map<const CMat>(v.data(), n, n); }

}  // namespace

CMat su3_gram_factored(const GeneratorSet& a, const GeneratorSet& b, const GroupGrid& grid) {
    if (grid.spec().kind == GridKind::Su2) throw std::invalid_argument("su3_gram_factored: SU(3) grid required");
    const Su3Evaluator ea(a), eb(b);
    const long n = static_cast<long>(a.dim()) * b.dim();
    const TensorGrid& t = grid.tensor();
    const int len = static_cast<int>(n * n);

    auto r23_block = [&](int ax0) {
        const Axis &al = t.axis(ax0), &be = t.axis(ax0 + 1), &ga = t.axis(ax0 + 2);
        const std::size_t cnt = static_cast<std::size_t>(al.size()) * be.size() * ga.size();
        return as_matrix(reduce_nodes(cnt, len, [&](std::size_t k, CVec& acc) {
            const int ig = static_cast<int>(k % ga.size());
            const int ib = static_cast<int>((k / ga.size()) % be.size());
            const int ia = static_cast<int>(k / (ga.size() * be.size()));
            const SU2Euler e{al.nodes[ia], be.nodes[ib], ga.nodes[ig]};
            add_kron(acc, al.weights[ia] * be.weights[ib] * ga.weights[ig], ea.factor(Su3Factor::R23, e),
                     eb.factor(Su3Factor::R23, e));
        }), n);
    };
    const CMat x1 = r23_block(0);
    const Axis &a2 = t.axis(3), &b2 = t.axis(4);
    const CMat x2 = as_matrix(
        reduce_nodes(static_cast<std::size_t>(a2.size()) * b2.size(), len, [&](std::size_t k, CVec& acc) {
            const int ib = static_cast<int>(k % b2.size());
            const int ia = static_cast<int>(k / b2.size());
            const SU2Euler e{a2.nodes[ia], b2.nodes[ib], a2.nodes[ia]};
            add_kron(acc, a2.weights[ia] * b2.weights[ib], ea.factor(Su3Factor::R12, e),
                     eb.factor(Su3Factor::R12, e));
        }),
        n);
    const CMat x3 = r23_block(5);
    return x1 * x2 * x3;
}

CMat su3_gram_bruteforce(const GeneratorSet& a, const GeneratorSet& b, const GroupGrid& grid) {
    if (grid.spec().kind == GridKind::Su2) throw std::invalid_argument("su3_gram_bruteforce: SU(3) grid required");
    const Su3Evaluator ea(a), eb(b);
    const long n = static_cast<long>(a.dim()) * b.dim();
    const CVec acc = reduce_nodes_serial(grid.size(), static_cast<int>(n * n), [&](std::size_t k, CVec& out) {
        double c[8];
        const double w = grid.node(k, c);
        const SU3Euler e = SU3Euler::from_array(c);
        add_kron(out, w, ea.element(e), eb.element(e));
    });
    return as_matrix(acc, n);
}

}  // namespace tomo::kernels
