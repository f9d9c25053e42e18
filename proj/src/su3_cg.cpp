#include "tomo/su3_cg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

namespace tomo {

namespace {

double fact(int n) {
    if (n < 0) throw std::out_of_range("factorial of negative number");
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

struct Weight {
    int w1, w2, w3;
    bool operator<(const Weight& o) const { return std::tie(w1, w2, w3) < std::tie(o.w1, o.w2, o.w3); }
};

using RowKey = std::tuple<int, int, int, int>;  // n1, 2I1, nu*1, 2I2

RMat real_part(const CMat& m) {
    if (m.imag().cwiseAbs().maxCoeff() > 0.0) throw std::logic_error("expected a real generator matrix");
    return m.real();
}

struct Context {
    int A;
    BasisIndexMap basis;
    int d;
    std::array<std::array<RMat, 3>, 3> T;
    std::vector<Weight> wt;  // weight of each product basis vector

    explicit Context(int a) : A(a), basis(a), d(basis.size()) {
        const GeneratorSet g = product_generators(a);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) T[i][j] = real_part(g.op(i + 1, j + 1));
        const int D = d * d;
        wt.resize(D);
        for (int k = 0; k < D; ++k)
            wt[k] = {static_cast<int>(std::lround(T[0][0](k, k))), static_cast<int>(std::lround(T[1][1](k, k))),
                     static_cast<int>(std::lround(T[2][2](k, k)))};
    }
    const RMat& t(int i, int j) const { return T[i - 1][j - 1]; }
};

Weight weight_of(const Context& c, const RVec& v) {
    for (int k = 0; k < v.size(); ++k)
        if (std::abs(v(k)) > 1e-9) return c.wt[k];
    throw std::logic_error("zero vector has no weight");
}

// highest-weight vector of (sigma, sigma): weight (sigma, 0, -sigma), killed by S12, S23
RVec highest_weight(const Context& c, int sigma) {
    std::vector<int> idx;
    for (int k = 0; k < c.d * c.d; ++k)
        if (c.wt[k].w1 == sigma && c.wt[k].w2 == 0 && c.wt[k].w3 == -sigma) idx.push_back(k);
    const int m = static_cast<int>(idx.size());
    const int D = c.d * c.d;
    RMat K(2 * D, m);
    for (int j = 0; j < m; ++j) {
        K.block(0, j, D, 1) = c.t(1, 2).col(idx[j]);
        K.block(D, j, D, 1) = c.t(2, 3).col(idx[j]);
    }
    Eigen::JacobiSVD<RMat> svd(K, Eigen::ComputeFullV);
    const RVec& s = svd.singularValues();
    int nullity = 0, col = -1;
    for (int j = 0; j < m; ++j) {
        const double sv = j < s.size() ? s(j) : 0.0;
        if (sv < 1e-10) {
            ++nullity;
            col = j;
        }
    }
    if (nullity != 1)
        throw std::runtime_error("build_cg_table: highest weight of (" + std::to_string(sigma) + "," +
                                 std::to_string(sigma) + ") has multiplicity " + std::to_string(nullity));
    RVec hw = RVec::Zero(D);
    for (int j = 0; j < m; ++j) hw(idx[j]) = svd.matrixV()(j, col);
    if (std::max((c.t(1, 2) * hw).cwiseAbs().maxCoeff(), (c.t(2, 3) * hw).cwiseAbs().maxCoeff()) > 1e-12)
        throw std::runtime_error("build_cg_table: highest-weight vector not annihilated by raising operators");
    return hw / hw.norm();
}

// lowering closure from the highest weight, grouped by weight
std::map<Weight, std::vector<RVec>> weight_spaces(const Context& c, const RVec& hw) {
    std::map<Weight, std::vector<RVec>> spaces;
    spaces[weight_of(c, hw)].push_back(hw);
    std::vector<RVec> frontier{hw};
    const std::array<std::pair<int, int>, 3> lowering{{{2, 1}, {3, 2}, {3, 1}}};
    while (!frontier.empty()) {
        std::vector<RVec> next;
        for (const RVec& v : frontier) {
            for (auto [i, j] : lowering) {
                RVec x = c.t(i, j) * v;
                if (x.norm() < 1e-9) continue;
                const Weight w = weight_of(c, x);
                auto& group = spaces[w];
                for (int pass = 0; pass < 2; ++pass)
                    for (const RVec& u : group) x -= u.dot(x) * u;
                if (x.norm() < 1e-9) continue;
                x /= x.norm();
                group.push_back(x);
                next.push_back(x);
            }
        }
        frontier = std::move(next);
    }
    return spaces;
}

// reduced coefficients of a coupled state with SU(2)_23 labels (I3, M3)
std::map<RowKey, double> reduce_state(const Context& c, const RVec& v, int twoI3, int twoM3) {
    std::map<RowKey, double> rows;
    for (int a = 0; a < c.d; ++a) {
        const OccupationState& n = c.basis.state(a);
        for (int b = 0; b < c.d; ++b) {
            const double coef = v(a * c.d + b);
            const OccupationState& nu = c.basis.state(b);
            const int twoI1 = n.n2 + n.n3, twoM1 = n.n2 - n.n3;
            const int twoI2 = nu.n2 + nu.n3, twoM2 = nu.n3 - nu.n2;
            const double s = su2_cg(twoI1, twoM1, twoI2, twoM2, twoI3, twoM3);
            if (std::abs(s) < 1e-12) {
                if (std::abs(coef) > 1e-10)
                    throw std::runtime_error("build_cg_table: coefficient outside SU(2) coupling pattern");
                continue;
            }
            const RowKey key{n.n1, twoI1, c.A - nu.n1, twoI2};
            const double r = coef / s;
            auto it = rows.find(key);
            if (it == rows.end())
                rows.emplace(key, r);
            else if (std::abs(it->second - r) > 1e-10)
                throw std::runtime_error("build_cg_table: reduced coefficient depends on M labels");
        }
    }
    return rows;
}

}  // namespace

std::vector<int> decompose_product(int A) {
    if (A < 0) throw std::invalid_argument("decompose_product: A must be >= 0");
    std::vector<int> s;
    for (int k = A; k >= 0; --k) s.push_back(k);
    return s;
}

double su2_cg(int twoj1, int twom1, int twoj2, int twom2, int twoJ, int twoM) {
    if (twoj1 < 0 || twoj2 < 0 || twoJ < 0) return 0.0;
    if (twom1 + twom2 != twoM) return 0.0;
    if (std::abs(twom1) > twoj1 || std::abs(twom2) > twoj2 || std::abs(twoM) > twoJ) return 0.0;
    if ((twoj1 + twom1) % 2 || (twoj2 + twom2) % 2 || (twoJ + twoM) % 2) return 0.0;
    if (twoJ > twoj1 + twoj2 || twoJ < std::abs(twoj1 - twoj2) || (twoj1 + twoj2 + twoJ) % 2) return 0.0;
    const int a = (twoJ + twoj1 - twoj2) / 2, b = (twoJ - twoj1 + twoj2) / 2, cc = (twoj1 + twoj2 - twoJ) / 2;
    const int big = (twoj1 + twoj2 + twoJ) / 2 + 1;
    const double tri = (twoJ + 1) * fact(a) * fact(b) * fact(cc) / fact(big);
    const int jm1 = (twoj1 - twom1) / 2, jp1 = (twoj1 + twom1) / 2;
    const int jm2 = (twoj2 - twom2) / 2, jp2 = (twoj2 + twom2) / 2;
    const int Jp = (twoJ + twoM) / 2, Jm = (twoJ - twoM) / 2;
    const double pre = std::sqrt(tri * fact(Jp) * fact(Jm) * fact(jm1) * fact(jp1) * fact(jm2) * fact(jp2));
    // k runs where every factorial argument is non-negative
    const int e4 = (twoJ - twoj2 + twom1) / 2, e5 = (twoJ - twoj1 - twom2) / 2;
    double sum = 0.0;
    for (int k = std::max({0, -e4, -e5}); k <= std::min({cc, jm1, jp2}); ++k) {
        const double den = fact(k) * fact(cc - k) * fact(jm1 - k) * fact(jp2 - k) * fact(e4 + k) * fact(e5 + k);
        sum += (k % 2 ? -1.0 : 1.0) / den;
    }
    return pre * sum;
}

GeneratorSet product_generators(int A) {
    const int d = static_cast<int>(dimension(A, 0));
    const CMat id = CMat::Identity(d, d);
    std::array<std::array<CMat, 3>, 3> ops;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            const CMat s = collective_operator(A, i, j);
            const CMat sb = conjugate_generator(A, i, j);
            CMat t = CMat::Zero(d * d, d * d);
            for (int p = 0; p < d; ++p)
                for (int q = 0; q < d; ++q) {
                    if (s(p, q) != 0.0) t.block(p * d, q * d, d, d) += s(p, q) * id;
                    if (p == q) t.block(p * d, q * d, d, d) += sb;
                }
            ops[i - 1][j - 1] = std::move(t);
        }
    return GeneratorSet(std::move(ops));
}

const CoupledIrrep& CGTable::irrep(int sigma) const {
    for (const CoupledIrrep& ir : irreps)
        if (ir.sigma == sigma) return ir;
    throw std::out_of_range("CGTable: no irrep with sigma = " + std::to_string(sigma));
}

double CGTable::coefficient(int sigma, int column, int a, int b) const {
    const CoupledIrrep& ir = irrep(sigma);
    const int d = static_cast<int>(dimension(A, 0));
    if (a < 0 || b < 0 || a >= d || b >= d || column < 0 || column >= ir.basis.cols())
        throw std::out_of_range("CGTable::coefficient: index out of range");
    return ir.basis(a * d + b, column);
}

double CGTable::unitarity_error() const {
    long total = 0;
    for (const CoupledIrrep& ir : irreps) total += ir.basis.cols();
    const long D = irreps.empty() ? 0 : irreps.front().basis.rows();
    RMat V(D, total);
    long at = 0;
    for (const CoupledIrrep& ir : irreps) {
        V.middleCols(at, ir.basis.cols()) = ir.basis;
        at += ir.basis.cols();
    }
    double e = (V.transpose() * V - RMat::Identity(total, total)).cwiseAbs().maxCoeff();
    if (total == D) e = std::max(e, (V * V.transpose() - RMat::Identity(D, D)).cwiseAbs().maxCoeff());
    else e = std::max(e, 1.0);
    return e;
}

CGTable build_cg_table(int A) {
    if (A < 1) throw std::invalid_argument("build_cg_table: A must be >= 1");
    const Context c(A);
    const RMat jz = 0.5 * (c.t(2, 2) - c.t(3, 3));
    const RMat c23 = jz * jz + 0.5 * (c.t(2, 3) * c.t(3, 2) + c.t(3, 2) * c.t(2, 3));

    CGTable table;
    table.A = A;
    for (int sigma : decompose_product(A)) {
        const RVec hw = highest_weight(c, sigma);
        const auto spaces = weight_spaces(c, hw);
        long count = 0;
        for (const auto& [w, vs] : spaces) count += static_cast<long>(vs.size());
        if (count != dimension(sigma, sigma))
            throw std::runtime_error("build_cg_table: lowering closure has wrong dimension");

        CoupledIrrep ir;
        ir.sigma = sigma;
        std::vector<RVec> cols;
        for (int N1 = 2 * sigma; N1 >= 0; --N1) {
            for (int twoI3 = 2 * sigma; twoI3 >= 0; --twoI3) {
                if ((3 * sigma - N1 - twoI3) % 2) continue;
                const int N3 = (3 * sigma - N1 - twoI3) / 2;
                const int N2 = N3 + twoI3;
                if (N3 < 0) continue;
                auto it = spaces.find({N1 - sigma, N2 - sigma, N3 - sigma});
                if (it == spaces.end()) continue;
                const auto& group = it->second;
                const int m = static_cast<int>(group.size());
                RMat Q(c.d * c.d, m);
                for (int j = 0; j < m; ++j) Q.col(j) = group[j];
                Eigen::SelfAdjointEigenSolver<RMat> es(Q.transpose() * c23 * Q);
                const double target = 0.25 * twoI3 * (twoI3 + 2);
                int hit = -1, hits = 0;
                for (int j = 0; j < m; ++j)
                    if (std::abs(es.eigenvalues()(j) - target) < 1e-8) {
                        hit = j;
                        ++hits;
                    }
                if (hits == 0) continue;
                if (hits > 1) throw std::runtime_error("build_cg_table: repeated (N1, I3) multiplet");
                RVec v = Q * es.eigenvectors().col(hit);

                auto rows = reduce_state(c, v, twoI3, twoI3);
                // phase: the row with the largest n1 carries a positive coefficient
                const RowKey* top = nullptr;
                for (auto r = rows.rbegin(); r != rows.rend(); ++r)
                    if (std::abs(r->second) > 1e-12) {
                        top = &r->first;
                        break;
                    }
                if (!top) throw std::runtime_error("build_cg_table: empty multiplet");
                if (rows.at(*top) < 0.0) v = -v;

                ReducedMultiplet rm{sigma, N1, twoI3, {}};
                std::map<RowKey, double> acc;
                RVec state = v;
                for (int twoM3 = twoI3; twoM3 >= -twoI3; twoM3 -= 2) {
                    if (twoM3 != twoI3) {
                        const double I = 0.5 * twoI3, M = 0.5 * (twoM3 + 2);
                        state = c.t(3, 2) * state / std::sqrt((I + M) * (I - M + 1.0));
                    }
                    const int n2 = (3 * sigma - N1 + twoM3) / 2, n3 = (3 * sigma - N1 - twoM3) / 2;
                    ir.labels.push_back({sigma, N1, n2, n3, twoI3, twoM3});
                    cols.push_back(state);
                    for (const auto& [key, val] : reduce_state(c, state, twoI3, twoM3)) {
                        auto f = acc.find(key);
                        if (f == acc.end())
                            acc.emplace(key, val);
                        else if (std::abs(f->second - val) > 1e-10)
                            throw std::runtime_error("build_cg_table: reduced coefficient depends on M3");
                    }
                }
                for (auto r = acc.rbegin(); r != acc.rend(); ++r) {
                    if (std::abs(r->second) < 1e-12) continue;
                    const auto [n1, twoI1, nus1, twoI2] = r->first;
                    rm.rows.push_back({n1, twoI1, nus1, twoI2, r->second});
                }
                table.reduced.push_back(std::move(rm));
            }
        }
        if (static_cast<long>(cols.size()) != dimension(sigma, sigma))
            throw std::runtime_error("build_cg_table: multiplet labelling incomplete");
        ir.basis.resize(c.d * c.d, static_cast<long>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            ir.basis.col(static_cast<long>(j)) = cols[j];
            const CoupledLabel& l = ir.labels[j];
            if (l.N1 == sigma && l.N2 == sigma && l.N3 == sigma && l.twoI3 == 0) ir.ref_index = static_cast<int>(j);
        }
        if (ir.ref_index < 0) throw std::runtime_error("build_cg_table: reference state missing");
        table.irreps.push_back(std::move(ir));
        table.irreps.back().generators = coupled_irrep_generators(table, sigma);
    }
    if (table.unitarity_error() > 1e-10) throw std::runtime_error("build_cg_table: coupled basis not orthonormal");
    return table;
}

double reduced_cg(const CGTable& t, int sigma, int N1, int twoI3, int n1, int twoI1, int nustar1, int twoI2) {
    const CoupledIrrep& ir = t.irrep(sigma);
    const BasisIndexMap basis(t.A);
    const int d = basis.size();
    bool found = false;
    double value = 0.0;
    for (std::size_t j = 0; j < ir.labels.size(); ++j) {
        const CoupledLabel& l = ir.labels[j];
        if (l.N1 != N1 || l.twoI3 != twoI3) continue;
        for (int a = 0; a < d; ++a) {
            const OccupationState& n = basis.state(a);
            if (n.n1 != n1 || n.n2 + n.n3 != twoI1) continue;
            for (int b = 0; b < d; ++b) {
                const OccupationState& nu = basis.state(b);
                if (t.A - nu.n1 != nustar1 || nu.n2 + nu.n3 != twoI2) continue;
                const double s = su2_cg(twoI1, n.n2 - n.n3, twoI2, nu.n3 - nu.n2, twoI3, l.twoM3);
                if (std::abs(s) < 1e-12) continue;
                const double r = ir.basis(a * d + b, static_cast<long>(j)) / s;
                if (found && std::abs(r - value) > 1e-12)
                    throw std::runtime_error("reduced_cg: value depends on the M labels");
                value = r;
                found = true;
            }
        }
    }
    if (!found) throw std::out_of_range("reduced_cg: no SU(2) coupling connects the requested labels");
    return value;
}

GeneratorSet coupled_irrep_generators(const CGTable& t, int sigma) {
    const CoupledIrrep& ir = t.irrep(sigma);
    const GeneratorSet g = product_generators(t.A);
    const CMat V = ir.basis.cast<cplx>();
    std::array<std::array<CMat, 3>, 3> ops;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            const CMat sv = g.op(i, j) * V;
            CMat r = V.adjoint() * sv;
            if (max_abs(sv - V * r) > 1e-10)
                throw std::runtime_error("coupled_irrep_generators: coupled span not invariant");
            ops[i - 1][j - 1] = std::move(r);
        }
    return GeneratorSet(std::move(ops));
}

}  // namespace tomo
