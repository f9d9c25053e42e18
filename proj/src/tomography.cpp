#include "tomo/tomography.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "tomo/kernels.hpp"

namespace tomo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
CVec reduce(bool parallel, std::size_t n, int len, F&& f) {
    return parallel ? kernels::reduce_nodes(n, len, f) : kernels::reduce_nodes_serial(n, len, f);
}

// SU(2) spin probed by the reference orbit, doubled
int probe_twoI(ConfigKind c, int A) { return c == ConfigKind::Lambda ? A : 2 * A; }

// first index of the recoverable SU(2) block in the native basis, m descending
int block_start(ConfigKind c, int A) {
    return c == ConfigKind::Lambda ? static_cast<int>(dimension(A, 0)) - (A + 1) : 0;
}

void require_basis(const DensityMatrix& rho, ConfigKind c) {
    if (rho.basis != native_basis(c))
        throw InvalidConfig(std::string("density matrix is in the ") + basis_name(rho.basis) +
                            " basis but the " + config_name(c) + " configuration needs the " +
                            basis_name(native_basis(c)) + " basis");
}

double residual_of(const TomogramSamples& s, const CMat& rho, bool parallel) {
    const TomogramModel model(s.config, s.A);
    auto f = [&](std::size_t k) { return std::abs(model.omega(rho, s.point(k)) - s.omega[k]); };
    const std::vector<double> r =
        parallel ? kernels::map_nodes(s.size(), f) : kernels::map_nodes_serial(s.size(), f);
    double m = 0.0;
    for (double x : r) m = std::max(m, x);
    return m;
}

ReconstructionReport finish(const TomogramSamples& s, CMat rec, RecoverabilityMask mask, bool parallel) {
    ReconstructionReport rep;
    const int d = mask.dim;
    CMat probe = CMat::Zero(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (mask.at(r, c) == EntryStatus::Recovered) probe(r, c) = rec(r, c);
    rep.residual = residual_of(s, probe, parallel);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (mask.at(r, c) == EntryStatus::Unrecoverable) rec(r, c) = cplx(kNaN, kNaN);
    // a lone missing diagonal is fixed by the trace
    for (int i = 0; i < d; ++i) {
        if (mask.at(i, i) != EntryStatus::Inferred) continue;
        double tr = 0.0;
        for (int j = 0; j < d; ++j)
            if (j != i) tr += rec(j, j).real();
        rec(i, i) = 1.0 - tr;
        rep.inferred.emplace_back(i, i);
    }
    rep.rho.m = std::move(rec);
    rep.rho.basis = mask.basis;
    rep.mask = std::move(mask);
    return rep;
}

// rho_{m mu} = (-1)^{I+mu} sum_L (2L+1)/8pi^2 C^{L M}_{I m, I -mu} / C^{L 0}_{I -I, I I} int omega conj(D^L_{0M})
CMat su2_inversion(const TomogramSamples& s, int twoI, bool parallel) {
    const int maxL = twoI;
    const int len = (maxL + 1) * (maxL + 1);
    auto offset = [](int L, int M) { return L * L + (L - M); };
    const CVec ints = reduce(parallel, s.size(), len, [&](std::size_t k, CVec& acc) {
        const double* p = s.point(k);
        const SU2Euler e{p[0], p[1], p[2]};
        const double w = s.weights[k] * s.omega[k];
        for (int L = 0; L <= maxL; ++L)
            for (int M = -L; M <= L; ++M) acc(offset(L, M)) += w * std::conj(su2_D(2 * L, 0, 2 * M, e));
    });
    const int n = twoI + 1;
    CMat block(n, n);
    const double vol = su2_group_volume();
    for (int a = 0; a < n; ++a) {
        const int twoM = twoI - 2 * a;
        for (int b = 0; b < n; ++b) {
            const int twoMu = twoI - 2 * b;
            const int M = (twoM - twoMu) / 2;
            cplx sum = 0.0;
            for (int L = std::abs(M); L <= maxL; ++L) {
                const double num = su2_cg(twoI, twoM, twoI, -twoMu, 2 * L, 2 * M);
                if (num == 0.0) continue;
                const double den = su2_cg(twoI, -twoI, twoI, twoI, 2 * L, 0);
                sum += (2.0 * L + 1.0) / vol * num / den * ints(offset(L, M));
            }
            const int phase = (twoI + twoMu) / 2;
            block(a, b) = (phase % 2 ? -1.0 : 1.0) * sum;
        }
    }
    return block;
}

ReconstructionReport reconstruct_su2_config(const TomogramSamples& s, ConfigKind c, bool parallel) {
    if (s.config != c) throw InvalidConfig("sample set belongs to another configuration");
    check_samples_on_grid(s, true);
    const int d = static_cast<int>(dimension(s.A, 0));
    const int twoI = probe_twoI(c, s.A);
    const CMat block = su2_inversion(s, twoI, parallel);
    CMat rec = CMat::Zero(d, d);
    const int o = block_start(c, s.A);
    rec.block(o, o, twoI + 1, twoI + 1) = block;
    return finish(s, std::move(rec), recoverability_mask(c, s.A), parallel);
}

}  // namespace

int reference_index(ConfigKind c, int A) {
    switch (c) {
        case ConfigKind::NonDegenerate: return 0;                                // |A00>
        case ConfigKind::Lambda: return static_cast<int>(dimension(A, 0)) - 1;   // |00A> (tilde)
        case ConfigKind::Xi: return 2 * A;                                       // |A,-A>
    }
    return 0;
}

const char* basis_name(BasisTag b) {
    switch (b) {
        case BasisTag::Occupational: return "occupational";
        case BasisTag::Tilde: return "tilde";
        case BasisTag::LM: return "lm";
    }
    return "?";
}

BasisTag parse_basis(const std::string& s) {
    if (s == "occupational") return BasisTag::Occupational;
    if (s == "tilde") return BasisTag::Tilde;
    if (s == "lm") return BasisTag::LM;
    throw InvalidConfig("unknown basis tag '" + s + "'");
}

BasisTag native_basis(ConfigKind c) {
    switch (c) {
        case ConfigKind::NonDegenerate: return BasisTag::Occupational;
        case ConfigKind::Lambda: return BasisTag::Tilde;
        case ConfigKind::Xi: return BasisTag::LM;
    }
    return BasisTag::Occupational;
}

int atoms_from_dimension(int dim) {
    for (int A = 0; A <= 64; ++A)
        if (dimension(A, 0) == dim) return A;
    throw InvalidConfig("dimension " + std::to_string(dim) + " is not (A+1)(A+2)/2 for any A");
}

int DensityMatrix::atoms() const { return atoms_from_dimension(dim()); }

void DensityMatrix::validate(double herm_tol, double trace_tol, double psd_tol) const {
    if (m.rows() != m.cols() || m.rows() == 0) throw InvariantViolation("density matrix is not square");
    if (!m.allFinite()) throw InvariantViolation("density matrix has non-finite entries");
    const double h = hermiticity_error(m);
    if (h > herm_tol) {
        std::ostringstream os;
        os << "density matrix not Hermitian (max deviation " << h << ")";
        throw InvariantViolation(os.str());
    }
    const cplx tr = m.trace();
    if (std::abs(tr - cplx(1.0)) > trace_tol) {
        std::ostringstream os;
        os << "density matrix trace is " << tr.real() << " (expected 1)";
        throw InvariantViolation(os.str());
    }
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol) {
        std::ostringstream os;
        os << "density matrix not positive semidefinite (min eigenvalue " << es.eigenvalues().minCoeff() << ")";
        throw InvariantViolation(os.str());
    }
}

int RecoverabilityMask::count(EntryStatus s) const {
    int n = 0;
    for (EntryStatus x : status) n += (x == s);
    return n;
}

RecoverabilityMask recoverability_mask(ConfigKind c, int A) {
    if (A < 1) throw InvalidConfig("A must be >= 1");
    RecoverabilityMask mask;
    mask.basis = native_basis(c);
    mask.dim = static_cast<int>(dimension(A, 0));
    const int d = mask.dim;
    mask.status.assign(static_cast<std::size_t>(d) * d, EntryStatus::Unrecoverable);
    int lo = 0, hi = d;
    if (c != ConfigKind::NonDegenerate) {
        lo = block_start(c, A);
        hi = lo + probe_twoI(c, A) + 1;
    }
    for (int r = lo; r < hi; ++r)
        for (int k = lo; k < hi; ++k) mask.status[static_cast<std::size_t>(r) * d + k] = EntryStatus::Recovered;
    // normalization fixes a lone missing diagonal
    std::vector<int> missing;
    for (int i = 0; i < d; ++i)
        if (i < lo || i >= hi) missing.push_back(i);
    if (missing.size() == 1)
        mask.status[static_cast<std::size_t>(missing[0]) * d + missing[0]] = EntryStatus::Inferred;
    return mask;
}

const char* prefactor_name(Prefactor p) {
    switch (p) {
        case Prefactor::Dimension: return "dim(mu,mu)";
        case Prefactor::Cube: return "(mu+1)^3";
        case Prefactor::Misstated: return "(mu+1)^2(mu+2)/2";
    }
    return "?";
}

GridSpec default_grid(ConfigKind c, int A) {
    if (A < 1) throw InvalidConfig("A must be >= 1");
    switch (c) {
        case ConfigKind::NonDegenerate: return su3_grid_spec(A, GridKind::Su3Reduced);
        case ConfigKind::Lambda: return su2_grid_spec(2 * A);   // D^L with L <= A
        case ConfigKind::Xi: return su2_grid_spec(4 * A);       // D^L with L <= 2A
    }
    return {};
}

void check_grid_exact(ConfigKind c, int A, const GridSpec& g) {
    const GridSpec need = default_grid(c, A);
    const bool su3 = c == ConfigKind::NonDegenerate;
    if (su3 != (g.kind != GridKind::Su2))
        throw GridMismatch(std::string("grid kind ") + grid_kind_name(g.kind) + " does not fit the " +
                           config_name(c) + " configuration");
    if (g.phase_nodes < need.phase_nodes || g.beta_nodes < need.beta_nodes)
        throw GridMismatch("grid with " + std::to_string(g.phase_nodes) + " phase / " +
                           std::to_string(g.beta_nodes) + " beta nodes is not exact for A = " + std::to_string(A) +
                           " (needs " + std::to_string(need.phase_nodes) + " / " +
                           std::to_string(need.beta_nodes) + ")");
}

TomogramModel::TomogramModel(ConfigKind c, int A) : config_(c), A_(A) {
    if (A < 1) throw InvalidConfig("A must be >= 1");
    dim_ = static_cast<int>(dimension(A, 0));
    switch (c) {
        case ConfigKind::NonDegenerate: su3_ = Su3Evaluator(symmetric_generators(A)); break;
        case ConfigKind::Lambda: su2_ = Su2Rotor(su3_subalgebra(symmetric_generators(A), Su3Factor::R23)); break;
        case ConfigKind::Xi:
            su2_ = Su2Rotor(xi_generators(A).su2());
            lm_ = lm_basis_matrix(A);
            break;
    }
}

CRow TomogramModel::ref_row(const double* p) const {
    CRow r = CRow::Zero(dim_);
    switch (config_) {
        case ConfigKind::NonDegenerate:
            r(0) = 1.0;
            su3_.apply_right(r, SU3Euler::from_array(p));
            return r;
        case ConfigKind::Lambda:
            r(dim_ - 1) = 1.0;
            su2_.apply_right(r, {p[0], p[1], p[2]});
            return r;
        case ConfigKind::Xi: {
            // <A,-A| = <00A|, rotate in the occupational basis, then change basis
            r(dim_ - 1) = 1.0;
            su2_.apply_right(r, {p[0], p[1], p[2]});
            return r * lm_;
        }
    }
    return r;
}

double TomogramModel::omega(const CMat& rho, const double* p) const {
    const CRow r = ref_row(p);
    const cplx w = (r * rho * r.adjoint())(0, 0);
    if (std::abs(w.imag()) > 1e-12 * std::max(1.0, rho.cwiseAbs().maxCoeff()))
        throw InvariantViolation("tomogram value is not real; density matrix not Hermitian?");
    return w.real();
}

double simulate_tomogram(const DensityMatrix& rho, const SU3Euler& point) {
    require_basis(rho, ConfigKind::NonDegenerate);
    const double p[8] = {point.alpha1, point.beta1, point.gamma1, point.alpha2,
                         point.beta2,  point.alpha3, point.beta3, point.gamma3};
    return TomogramModel(ConfigKind::NonDegenerate, rho.atoms()).omega(rho.m, p);
}

double simulate_tomogram(const DensityMatrix& rho, ConfigKind c, const SU2Euler& point) {
    if (c == ConfigKind::NonDegenerate) throw InvalidConfig("the non-degenerate tomogram needs an SU(3) point");
    require_basis(rho, c);
    const double p[3] = {point.alpha, point.beta, point.gamma};
    return TomogramModel(c, rho.atoms()).omega(rho.m, p);
}

double simulate_tomogram(const DensityMatrix& rho, const PulseParams& tau) {
    require_basis(rho, ConfigKind::NonDegenerate);
    const CMat u = nondeg_sequence(rho.atoms(), tau);
    return (u.row(0) * rho.m * u.row(0).adjoint())(0, 0).real();
}

TomogramSamples simulate_samples(const DensityMatrix& rho, ConfigKind c, const GridSpec& spec, bool parallel) {
    require_basis(rho, c);
    rho.validate();
    const int A = rho.atoms();
    if ((c == ConfigKind::NonDegenerate) == (spec.kind == GridKind::Su2))
        throw InvalidConfig(std::string("grid kind ") + grid_kind_name(spec.kind) + " does not fit the " +
                            config_name(c) + " configuration");
    const GroupGrid grid(spec);
    TomogramSamples s;
    s.config = c;
    s.A = A;
    s.grid = spec;
    const int np = spec.params();
    s.params.resize(grid.size() * np);
    s.weights.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) s.weights[k] = grid.node(k, s.params.data() + k * np);
    const TomogramModel model(c, A);
    auto f = [&](std::size_t k) { return model.omega(rho.m, s.point(k)); };
    s.omega = parallel ? kernels::map_nodes(grid.size(), f) : kernels::map_nodes_serial(grid.size(), f);
    return s;
}

void check_samples_on_grid(const TomogramSamples& s, bool allow_inexact) {
    if (!allow_inexact) check_grid_exact(s.config, s.A, s.grid);
    if ((s.config == ConfigKind::NonDegenerate) == (s.grid.kind == GridKind::Su2))
        throw GridMismatch("grid kind does not fit the configuration");
    const GroupGrid grid(s.grid);
    const int np = s.grid.params();
    if (grid.size() != s.size() || s.weights.size() != s.size() || s.params.size() != s.size() * np)
        throw GridMismatch("sample count " + std::to_string(s.size()) + " does not match the declared grid (" +
                           std::to_string(grid.size()) + " nodes)");
    std::vector<double> c(np);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double w = grid.node(k, c.data());
        if (std::abs(w - s.weights[k]) > 1e-12 * std::max(1.0, std::abs(w)))
            throw GridMismatch("sample " + std::to_string(k) + " weight differs from the declared grid");
        for (int j = 0; j < np; ++j)
            if (std::abs(c[j] - s.params[k * np + j]) > 1e-12)
                throw GridMismatch("sample " + std::to_string(k) + " is not at the declared grid node");
    }
}

ReconstructionReport reconstruct_nondeg(const TomogramSamples& s, const CGTable& table, Prefactor pref,
                                        bool parallel) {
    if (s.config != ConfigKind::NonDegenerate) throw InvalidConfig("sample set is not non-degenerate");
    if (table.A != s.A) throw InvalidConfig("CG table built for a different A");
    check_samples_on_grid(s, true);
    const int A = s.A;
    const int d = static_cast<int>(dimension(A, 0));

    // Samples sit on the declared grid, so runs of consecutive nodes differ only in
    // gamma3 (the fastest axis): rotate the reference once per run, then apply
    // exp(-i gamma3 Jz) for each node of the run.
    const GroupGrid grid(s.grid);
    const Axis& last = grid.tensor().axis(grid.tensor().rank() - 1);
    const std::size_t run = static_cast<std::size_t>(last.size());
    std::vector<Su3Evaluator> ev;
    std::vector<std::vector<CVec>> zphase;  // per irrep, diagonal of exp(-i gamma_j Jz)
    std::vector<int> offset;
    int len = 0;
    for (const CoupledIrrep& ir : table.irreps) {
        ev.emplace_back(ir.generators);
        std::vector<CVec> z;
        for (double gm : last.nodes) {
            const CMat m = ev.back().factor(Su3Factor::R23, {0.0, 0.0, gm});
            if (max_abs(m - CMat(m.diagonal().asDiagonal())) > 1e-12)
                throw std::logic_error("reconstruct_nondeg: Jz is not diagonal in the coupled basis");
            z.push_back(m.diagonal());
        }
        zphase.push_back(std::move(z));
        offset.push_back(len);
        len += static_cast<int>(ir.basis.cols());
    }
    const CVec g = reduce(parallel, s.size() / run, len, [&](std::size_t b, CVec& acc) {
        const std::size_t k0 = b * run;
        SU3Euler e = SU3Euler::from_array(s.point(k0));
        e.gamma3 = 0.0;
        for (std::size_t i = 0; i < table.irreps.size(); ++i) {
            const CoupledIrrep& ir = table.irreps[i];
            CRow r = CRow::Zero(ir.basis.cols());
            r(ir.ref_index) = 1.0;
            ev[i].apply_right(r, e);
            auto seg = acc.segment(offset[i], r.size());
            for (std::size_t j = 0; j < run; ++j) {
                const double w = s.weights[k0 + j] * s.omega[k0 + j];
                seg += w * (r.transpose().cwiseProduct(zphase[i][j])).conjugate();
            }
        }
    });

    const double vol = su3_group_volume();
    CVec x = CVec::Zero(d * d);
    for (std::size_t i = 0; i < table.irreps.size(); ++i) {
        const CoupledIrrep& ir = table.irreps[i];
        const int mu = ir.sigma;
        double p = 0.0;
        switch (pref) {
            case Prefactor::Dimension: p = static_cast<double>(dimension(mu, mu)); break;
            case Prefactor::Cube: p = std::pow(mu + 1.0, 3); break;
            case Prefactor::Misstated: p = 0.5 * (mu + 1.0) * (mu + 1.0) * (mu + 2.0); break;
        }
        const double cg_ref = ir.basis(0, ir.ref_index);  // |A00> x |(0,A) nu*=(0AA)>
        if (std::abs(cg_ref) < 1e-12) throw std::runtime_error("reconstruct_nondeg: vanishing reference coefficient");
        x += (p / vol / cg_ref) * (ir.basis.cast<cplx>() * g.segment(offset[i], ir.basis.cols()));
    }
    const BasisIndexMap basis(A);
    CMat rec(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) rec(a, b) = ((basis.state(b).n2 % 2) ? -1.0 : 1.0) * x(a * d + b);
    ReconstructionReport rep = finish(s, std::move(rec), recoverability_mask(ConfigKind::NonDegenerate, A), parallel);
    rep.note = std::string("prefactor ") + prefactor_name(pref);
    return rep;
}

ReconstructionReport reconstruct_nondeg(const TomogramSamples& s, Prefactor pref) {
    return reconstruct_nondeg(s, build_cg_table(s.A), pref);
}

ReconstructionReport reconstruct_lambda(const TomogramSamples& s, bool parallel) {
    return reconstruct_su2_config(s, ConfigKind::Lambda, parallel);
}

ReconstructionReport reconstruct_xi(const TomogramSamples& s, bool parallel) {
    return reconstruct_su2_config(s, ConfigKind::Xi, parallel);
}

ReconstructionReport reconstruct(const TomogramSamples& s) {
    switch (s.config) {
        case ConfigKind::NonDegenerate: return reconstruct_nondeg(s);
        case ConfigKind::Lambda: return reconstruct_lambda(s);
        case ConfigKind::Xi: return reconstruct_xi(s);
    }
    throw InvalidConfig("unknown configuration");
}

CMat least_squares_reconstruct(const TomogramSamples& s, bool parallel) {
    const TomogramModel model(s.config, s.A);
    const int d = model.dim();
    const int n = d * d;
    // [normal matrix | right-hand side], row a = r_n conj(r_nu)
    const CVec acc = reduce(parallel, s.size(), n * n + n, [&](std::size_t k, CVec& out) {
        const CRow r = model.ref_row(s.point(k));
        CVec a(n);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) a(i * d + j) = r(i) * std::conj(r(j));
        Eigen::Map<CMat> nm(out.data(), n, n);
        nm.noalias() += s.weights[k] * a.conjugate() * a.transpose();
        out.tail(n) += (s.weights[k] * s.omega[k]) * a.conjugate();
    });
    const CMat nm = Eigen::Map<const CMat>(acc.data(), n, n);
    const CVec rhs = acc.tail(n);
    Eigen::CompleteOrthogonalDecomposition<CMat> cod(nm);
    cod.setThreshold(1e-10);
    const CVec x = cod.solve(rhs);
    CMat rec(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rec(i, j) = x(i * d + j);
    return rec;
}

DensityMatrix basis_transform(const DensityMatrix& rho, BasisTag to) {
    if (rho.basis == to) return rho;
    const int A = rho.atoms();
    // everything goes through the occupational basis: rho_X = W^dagger rho_occ W
    auto to_occ = [&](const CMat& m, BasisTag from) -> CMat {
        switch (from) {
            case BasisTag::Occupational: return m;
            case BasisTag::Tilde: {
                const CMat t = lambda_T12(A);
                return t * m * t.adjoint();
            }
            case BasisTag::LM: {
                const CMat w = lm_basis_matrix(A);
                return w * m * w.adjoint();
            }
        }
        throw InvalidConfig("unknown basis");
    };
    const CMat occ = to_occ(rho.m, rho.basis);
    DensityMatrix out;
    out.basis = to;
    switch (to) {
        case BasisTag::Occupational: out.m = occ; break;
        case BasisTag::Tilde: {
            const CMat t = lambda_T12(A);
            out.m = t.adjoint() * occ * t;
            break;
        }
        case BasisTag::LM: {
            const CMat w = lm_basis_matrix(A);
            out.m = w.adjoint() * occ * w;
            break;
        }
    }
    return out;
}

DensityMatrix random_density_matrix(int dim, std::uint64_t seed, BasisTag basis) {
    if (dim < 1) throw InvalidConfig("random_density_matrix: dim must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat g(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = cplx(re, im);
        }
    CMat r = g * g.adjoint();
    r /= r.trace().real();
    r = 0.5 * (r + r.adjoint());
    return {r, basis};
}

double masked_max_error(const ReconstructionReport& r, const CMat& truth) {
    double e = 0.0;
    for (int i = 0; i < r.mask.dim; ++i)
        for (int j = 0; j < r.mask.dim; ++j)
            if (r.mask.at(i, j) != EntryStatus::Unrecoverable) e = std::max(e, std::abs(r.rho.m(i, j) - truth(i, j)));
    return e;
}

double masked_frobenius_error(const ReconstructionReport& r, const CMat& truth) {
    double e = 0.0;
    for (int i = 0; i < r.mask.dim; ++i)
        for (int j = 0; j < r.mask.dim; ++j)
            if (r.mask.at(i, j) != EntryStatus::Unrecoverable) e += std::norm(r.rho.m(i, j) - truth(i, j));
    return std::sqrt(e);
}

}  // namespace tomo
