#include <chrono>
#include <cstdio>

#include "tomo/kernels.hpp"
#include "tomo/su3_cg.hpp"
#include "tomo/tomography.hpp"

using namespace tomo;

namespace {

template <class F>
double seconds(F&& f, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        best = std::min(best, dt.count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, double diff) {
    std::printf("%-44s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  max|diff| %.2e\n", name, serial, parallel,
                serial / parallel, diff);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", kernels::max_threads());

    for (int A : {1, 2}) {
        const int d = static_cast<int>(dimension(A, 0));
        const DensityMatrix rho = random_density_matrix(d, 11);
        const GridSpec g = default_grid(ConfigKind::NonDegenerate, A);
        TomogramSamples ss, sp;
        const double ts = seconds([&] { ss = simulate_samples(rho, ConfigKind::NonDegenerate, g, false); });
        const double tp = seconds([&] { sp = simulate_samples(rho, ConfigKind::NonDegenerate, g, true); });
        double diff = 0.0;
        for (std::size_t k = 0; k < ss.size(); ++k) diff = std::max(diff, std::abs(ss.omega[k] - sp.omega[k]));
        char name[64];
        std::snprintf(name, sizeof name, "simulate nondeg A=%d (%zu nodes)", A, ss.size());
        row(name, ts, tp, diff);

        const CGTable table = build_cg_table(A);
        ReconstructionReport rs, rp;
        const double rts = seconds([&] { rs = reconstruct_nondeg(sp, table, Prefactor::Dimension, false); });
        const double rtp = seconds([&] { rp = reconstruct_nondeg(sp, table, Prefactor::Dimension, true); });
        std::snprintf(name, sizeof name, "reconstruct nondeg A=%d", A);
        row(name, rts, rtp, (rs.rho.m - rp.rho.m).cwiseAbs().maxCoeff());
    }

    for (ConfigKind c : {ConfigKind::Lambda, ConfigKind::Xi}) {
        const int A = 4;
        const int d = static_cast<int>(dimension(A, 0));
        const DensityMatrix rho = random_density_matrix(d, 12, native_basis(c));
        const GridSpec g = default_grid(c, A);
        TomogramSamples ss, sp;
        const double ts = seconds([&] { ss = simulate_samples(rho, c, g, false); });
        const double tp = seconds([&] { sp = simulate_samples(rho, c, g, true); });
        double diff = 0.0;
        for (std::size_t k = 0; k < ss.size(); ++k) diff = std::max(diff, std::abs(ss.omega[k] - sp.omega[k]));
        char name[64];
        std::snprintf(name, sizeof name, "simulate %s A=%d (%zu nodes)", config_name(c), A, ss.size());
        row(name, ts, tp, diff);
    }

    {
        const GroupGrid grid(GridSpec{GridKind::Su3Full, 5, 3});
        const GeneratorSet a = symmetric_generators(1);
        const double tb = seconds([&] { kernels::su3_gram_bruteforce(a, a, grid); }, 1);
        const double tf = seconds([&] { kernels::su3_gram_factored(a, a, grid); });
        const double diff =
            (kernels::su3_gram_bruteforce(a, a, grid) - kernels::su3_gram_factored(a, a, grid)).cwiseAbs().maxCoeff();
        row("gram (1,0), 5^5 3^3 grid: brute / factored", tb, tf, diff);
    }
    return 0;
}
