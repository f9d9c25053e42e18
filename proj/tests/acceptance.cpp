// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "tomo/dynamics.hpp"
#include "tomo/fixtures.hpp"
#include "tomo/kernels.hpp"
#include "tomo/su3_cg.hpp"
#include "tomo/tomography.hpp"
#include "tomo/verify.hpp"

using namespace tomo;

namespace {

constexpr double kCgTol = 1e-12;
constexpr double kMatrixTol = 1e-12;
constexpr double kConjTol = 1e-10;
constexpr double kVolumeRelTol = 1e-10;
constexpr double kOrthoTol = 1e-8;
constexpr double kRoundTripTol = 1e-8;
constexpr double kBlockTol = 1e-9;
constexpr double kStructTol = 1e-12;
constexpr double kLmTol = 1e-12;
constexpr double kFastBudget = 1.0;   // s
constexpr double kNondegBudget = 60.0;  // s

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool c, const std::string& what) {
        if (!c) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void info(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string g(double x) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2e", x);
    return b;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome cg_tables() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int matched = 0, total = 0;
    for (int A : {1, 2}) {
        const CGTable t = build_cg_table(A);
        int rows_here = 0, generated = 0;
        for (const auto& r : fixtures::cg_rows()) {
            if (r.A != A) continue;
            ++total;
            ++rows_here;
            const double v = reduced_cg(t, r.sigma, r.N1, r.twoI3, r.n1, r.twoI1, r.nustar1, r.twoI2);
            worst = std::max(worst, std::abs(v - r.value));
            matched += std::abs(v - r.value) <= kCgTol;
        }
        for (const auto& m : t.reduced) generated += static_cast<int>(m.rows.size());
        o.require(generated == rows_here, "A=" + std::to_string(A) + " generated " + std::to_string(generated) +
                                              " rows, tables hold " + std::to_string(rows_here));
    }
    const double dt = elapsed(t0);
    o.require(matched == total, std::to_string(total - matched) + " values off");
    o.require(dt < kFastBudget, "runtime " + g(dt) + " s");
    o.info(std::to_string(matched) + "/" + std::to_string(total) + " values, max dev " + g(worst) + ", " + g(dt) + " s");
    return o;
}

Outcome explicit_unitary() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(-M_PI, M_PI);
    double worst = 0.0;
    for (int t = 0; t < 25; ++t) {
        const PulseParams tau{u(gen), u(gen), u(gen), u(gen)};
        worst = std::max(worst, max_abs(nondeg_sequence(1, tau) - fixtures::nondeg_matrix(tau)));
    }
    const double dt = elapsed(t0);
    o.require(worst < kMatrixTol, "max error " + g(worst));
    o.require(dt < kFastBudget, "runtime " + g(dt) + " s");
    o.info("25 tau, max error " + g(worst) + ", " + g(dt) + " s");
    return o;
}

Outcome conjugation() {
    Outcome o;
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int A : {1, 2}) {
        const BasisIndexMap b(A);
        for (int t = 0; t < 10; ++t) {
            const SU3Euler e{4 * M_PI * u(gen), M_PI * u(gen), 4 * M_PI * u(gen), 2 * M_PI * u(gen),
                             M_PI * u(gen),     4 * M_PI * u(gen), M_PI * u(gen), 4 * M_PI * u(gen)};
            const CMat d = su3_element(symmetric_generators(A), e), dc = su3_element(conjugate_generators(A), e);
            for (int i = 0; i < b.size(); ++i)
                for (int k = 0; k < b.size(); ++k) {
                    const double s = ((b.state(i).n2 + b.state(k).n2) % 2) ? -1.0 : 1.0;
                    worst = std::max(worst, std::abs(std::conj(d(i, k)) - s * dc(i, k)));
                }
        }
    }
    o.require(worst < kConjTol, "max error " + g(worst));
    o.info("A=1,2 x 10 angles, max error " + g(worst));
    return o;
}

Outcome haar() {
    Outcome o;
    const double v3 = 1024 * std::pow(M_PI, 5), v2 = 8 * M_PI * M_PI;
    double vol_err = 0.0;
    for (int A : {1, 2}) vol_err = std::max(vol_err, std::abs(su3_quadrature_grid(A).weight_sum() / v3 - 1));
    // the measure density integrated with an unrelated beta rule
    const Rule gl = gauss_legendre(30);
    double beta = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i)
        for (std::size_t j = 0; j < gl.x.size(); ++j)
            for (std::size_t k = 0; k < gl.x.size(); ++k) {
                SU3Euler e;
                e.beta1 = M_PI / 2 * (gl.x[i] + 1);
                e.beta2 = M_PI / 2 * (gl.x[j] + 1);
                e.beta3 = M_PI / 2 * (gl.x[k] + 1);
                beta += gl.w[i] * gl.w[j] * gl.w[k] * invariant_measure_weight(e);
            }
    beta *= std::pow(M_PI / 2, 3);
    vol_err = std::max(vol_err, std::abs(std::pow(4 * M_PI, 4) * 2 * M_PI * beta / v3 - 1));
    double vol2_err = 0.0;
    for (int twoJ : {2, 4}) vol2_err = std::max(vol2_err, std::abs(su2_quadrature_grid(twoJ).weight_sum() / v2 - 1));
    o.require(vol_err < kVolumeRelTol, "SU(3) volume rel err " + g(vol_err));
    o.require(vol2_err < kVolumeRelTol, "SU(2) volume rel err " + g(vol2_err));

    double ortho = 0.0;
    int pairs = 0;
    for (int A : {1, 2}) {
        std::vector<GeneratorSet> irreps;
        for (int a = 1; a <= A; ++a) {
            irreps.push_back(symmetric_generators(a));
            irreps.push_back(conjugate_generators(a));
        }
        const CGTable t = build_cg_table(A);
        for (const auto& ir : t.irreps) irreps.push_back(ir.generators);
        const GroupGrid grid = su3_quadrature_grid(A);
        for (std::size_t i = 0; i < irreps.size(); ++i)
            for (std::size_t j = i; j < irreps.size(); ++j) {
                const CMat gm = kernels::su3_gram_factored(irreps[i], irreps[j], grid);
                const int da = irreps[i].dim(), db = irreps[j].dim();
                for (int p = 0; p < da; ++p)
                    for (int k = 0; k < db; ++k)
                        for (int q = 0; q < da; ++q)
                            for (int l = 0; l < db; ++l) {
                                const double want = (i == j && p == k && q == l) ? v3 / da : 0.0;
                                ortho = std::max(ortho, std::abs(gm(p * db + k, q * db + l) - want) * da / v3);
                            }
                ++pairs;
            }
    }
    o.require(ortho < kOrthoTol, "orthogonality dev " + g(ortho));
    o.info("volume rel err " + g(vol_err) + ", SU(2) " + g(vol2_err) + ", " + std::to_string(pairs) +
           " irrep pairs, orthogonality dev " + g(ortho));
    return o;
}

Outcome nondeg_round_trip() {
    Outcome o;
    double worst = 0.0, agree = 0.0, t2 = 0.0;
    for (int A : {1, 2}) {
        const auto t0 = std::chrono::steady_clock::now();
        const int d = static_cast<int>(dimension(A, 0));
        const CGTable table = build_cg_table(A);
        const GridSpec grid = default_grid(ConfigKind::NonDegenerate, A);
        for (int k = 0; k < 10; ++k) {
            const DensityMatrix r = random_density_matrix(d, 1000 + 10 * A + k);
            const TomogramSamples s = simulate_samples(r, ConfigKind::NonDegenerate, grid);
            const CMat q = reconstruct_nondeg(s, table).rho.m;
            worst = std::max(worst, (q - r.m).norm());
            agree = std::max(agree, (q - least_squares_reconstruct(s)).norm());
        }
        if (A == 2) t2 = elapsed(t0);
    }
    o.require(worst < kRoundTripTol, "max ||rho_rec - rho||_F " + g(worst));
    o.require(agree < kRoundTripTol, "quadrature vs least squares " + g(agree));
    o.require(t2 < kNondegBudget, "A=2 runtime " + g(t2) + " s");
    o.info("20 states, max err " + g(worst) + ", vs least squares " + g(agree) + ", A=2 " + g(t2) + " s");
    return o;
}

ReconstructionReport su2_round_trip(ConfigKind c, int A, const DensityMatrix& r) {
    return reconstruct(simulate_samples(r, c, default_grid(c, A)));
}

Outcome lambda_counts() {
    Outcome o;
    std::string counts;
    for (int A : {1, 2, 3}) {
        const int d = static_cast<int>(dimension(A, 0));
        const DensityMatrix r = random_density_matrix(d, 300 + A, BasisTag::Tilde);
        const ReconstructionReport rep = su2_round_trip(ConfigKind::Lambda, A, r);
        const int rec = rep.mask.count(EntryStatus::Recovered), inf = rep.mask.count(EntryStatus::Inferred),
                  none = rep.mask.count(EntryStatus::Unrecoverable);
        if (A == 1) o.require(rec == 4 && inf == 1 && none == 4, "A=1 counts " + std::to_string(rec) + "/" +
                                                                      std::to_string(inf) + "/" + std::to_string(none));
        if (A == 2) o.require(rec == 9 && d * d == 36, "A=2 recovered " + std::to_string(rec));
        const double err = masked_max_error(rep, r.m);
        o.require(err < kBlockTol, "A=" + std::to_string(A) + " block error " + g(err));
        counts += (counts.empty() ? "" : ", ") + std::string("A=") + std::to_string(A) + " " + std::to_string(rec) +
                  "+" + std::to_string(inf) + "+" + std::to_string(none) + " err " + g(err);
    }
    o.info(counts);
    return o;
}

Outcome xi_counts() {
    Outcome o;
    {
        const DensityMatrix r = random_density_matrix(3, 401, BasisTag::LM);
        const ReconstructionReport rep = su2_round_trip(ConfigKind::Xi, 1, r);
        const double err = max_abs(rep.rho.m - r.m);
        o.require(rep.mask.count(EntryStatus::Recovered) == 9, "A=1 not complete");
        o.require(err < kBlockTol, "A=1 error " + g(err));
        o.info("A=1 9/9 err " + g(err));
    }
    {
        const DensityMatrix r = random_density_matrix(6, 402, BasisTag::LM);
        const ReconstructionReport rep = su2_round_trip(ConfigKind::Xi, 2, r);
        const int rec = rep.mask.count(EntryStatus::Recovered);
        bool block = true, l0_masked = true;
        for (int i = 0; i < 6; ++i)
            for (int k = 0; k < 6; ++k) {
                const bool in = i < 5 && k < 5;
                block = block && (!in || rep.mask.at(i, k) == EntryStatus::Recovered);
                if (!in) l0_masked = l0_masked && rep.mask.at(i, k) != EntryStatus::Recovered;
            }
        const double err = max_abs(rep.rho.m.topLeftCorner(5, 5) - r.m.topLeftCorner(5, 5));
        o.require(rec == 25 && block, "A=2 recovered " + std::to_string(rec));
        o.require(l0_masked, "A=2 L=0 row/column recovered");
        o.require(err < kBlockTol, "A=2 block error " + g(err));
        o.info("A=2 25/36 (L=2 block) err " + g(err) + ", L=0 row/column not recovered, rho[00,00] " +
               (rep.mask.at(5, 5) == EntryStatus::Inferred ? "normalization-inferred" : "absent"));
    }
    return o;
}

Outcome structural() {
    Outcome o;
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-7.0, 7.0);
    double dark = 0.0, l2 = 0.0;
    for (int A = 1; A <= 3; ++A) {
        const BasisIndexMap b(A);
        const CMat t = lambda_T12(A);
        const CMat casimir = xi_generators(A).casimir();
        for (int s = 0; s < 10; ++s) {
            const SU2Euler e{u(gen), u(gen), u(gen)};
            const CMat ul = lambda_pulse_sequence(A, e);
            for (int n1 = 0; n1 <= A; ++n1) {
                CMat p = CMat::Zero(b.size(), b.size());
                for (int k = 0; k < b.size(); ++k)
                    if (b.state(k).n1 == n1) p(k, k) = 1.0;
                dark = std::max(dark, max_abs(commutator(ul, t * p * t.adjoint())));
            }
            l2 = std::max(l2, max_abs(commutator(xi_pulse_sequence(A, e), casimir)));
        }
    }
    o.require(dark < kStructTol, "Lambda commutator " + g(dark));
    o.require(l2 < kStructTol, "Xi commutator " + g(l2));
    o.info("A<=3, Lambda " + g(dark) + ", Xi " + g(l2));
    return o;
}

Outcome lm_table() {
    Outcome o;
    double table = 0.0, eig = 0.0;
    for (const auto& r : fixtures::lm_rows()) table = std::max(table, (lm_state(r.A, r.L, r.M) - r.vector()).cwiseAbs().maxCoeff());
    for (int A = 1; A <= 4; ++A) {
        const XiGenerators x = xi_generators(A);
        const CMat l2 = x.casimir();
        for (const LMLabel& l : lm_labels(A)) {
            const CVec v = lm_state(A, l.L, l.M);
            eig = std::max(eig, (x.lz * v - double(l.M) * v).cwiseAbs().maxCoeff());
            eig = std::max(eig, (l2 * v - double(l.L * (l.L + 1)) * v).cwiseAbs().maxCoeff());
        }
    }
    o.require(table < kLmTol, "table deviation " + g(table));
    o.require(eig < kLmTol, "eigen deviation " + g(eig));
    o.info(std::to_string(fixtures::lm_rows().size()) + " rows, dev " + g(table) + ", eigen dev (A<=4) " + g(eig));
    return o;
}

Outcome prefactor_audit() {
    Outcome o;
    const verify::SuiteResult r = verify::run_suite("prefactor");
    o.require(r.passed, "prefactor suite failed");
    for (const auto& d : r.details)
        if (d.find("does not close") != std::string::npos || d.find("closes") != std::string::npos)
            if (d.find("A=2") != std::string::npos) o.info(d.substr(5));
    const DensityMatrix rho = random_density_matrix(3, 501);
    const ReconstructionReport rep =
        reconstruct_nondeg(simulate_samples(rho, ConfigKind::NonDegenerate, default_grid(ConfigKind::NonDegenerate, 1)));
    o.require(rep.note.find(prefactor_name(Prefactor::Dimension)) != std::string::npos, "report does not log the prefactor");
    o.require((rep.rho.m - rho.m).norm() < kRoundTripTol, "default reconstruction does not close");
    o.info("report: " + rep.note);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 CG table fidelity", cg_tables},
        {"2 explicit unitary fidelity", explicit_unitary},
        {"3 conjugation identity", conjugation},
        {"4 Haar volume and D orthogonality", haar},
        {"5 non-degenerate round trip", nondeg_round_trip},
        {"6 Lambda recoverability", lambda_counts},
        {"7 Xi recoverability", xi_counts},
        {"8 structural invariance", structural},
        {"9 |LM> table fidelity", lm_table},
        {"10 normalization-constant audit", prefactor_audit},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.ok;
        std::printf("%s  %-36s %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
