#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "tomo/errors.hpp"
#include "tomo/fixtures.hpp"
#include "tomo/io.hpp"
#include "tomo/kernels.hpp"
#include "tomo/su3_cg.hpp"
#include "tomo/tomography.hpp"
#include "tomo/verify.hpp"

using namespace tomo;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kInvariant = 3, kGrid = 4, kResidual = 5, kFixture = 6 };

struct Job {
    int A = 1;
    std::string config = "nondeg";
    std::uint64_t seed = 1;
    std::string preset = "random";
    int phase_nodes = 0, beta_nodes = 0;
    int threads = 0;
    bool allow_inexact = false;
    bool allow_large = false;
    bool check = false;
    std::vector<std::string> suites;
    std::string input, output, report;
};

void check_A(const Job& j, int cap) {
    if (j.A < 1) throw InvalidConfig("--A must be >= 1, got " + std::to_string(j.A));
    if (j.A > cap && !j.allow_large)
        throw InvalidConfig("--A " + std::to_string(j.A) + " exceeds the cap of " + std::to_string(cap) +
                            " (pass --allow-large to override)");
}

ConfigKind config_of(const Job& j) {
    try {
        return parse_config(j.config);
    } catch (const std::exception&) {
        throw InvalidConfig("--config must be nondeg, lambda or xi, got '" + j.config + "'");
    }
}

// writes to the -o path, or stdout when none is given
template <class F>
void emit(const std::string& path, F&& write) {
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw InvalidConfig("--output: cannot open '" + path + "' for writing");
    write(os);
}

std::ifstream open_input(const std::string& path) {
    if (path.empty()) throw InvalidConfig("--input is required");
    std::ifstream is(path);
    if (!is) throw InvalidConfig("--input: cannot open '" + path + "'");
    return is;
}

int cmd_gen_rho(const Job& j) {
    check_A(j, 8);
    const ConfigKind c = config_of(j);
    const int d = static_cast<int>(dimension(j.A, 0));
    const BasisTag basis = native_basis(c);
    DensityMatrix rho;
    if (j.preset == "random") {
        rho = random_density_matrix(d, j.seed, basis);
    } else if (j.preset == "mixed") {
        rho = {CMat::Identity(d, d) / double(d), basis};
    } else if (j.preset == "pure-ref") {
        rho = {CMat::Zero(d, d), basis};
        const int r = reference_index(c, j.A);
        rho.m(r, r) = 1.0;
    } else {
        throw InvalidConfig("--preset must be random, mixed or pure-ref, got '" + j.preset + "'");
    }
    rho.validate();
    emit(j.output, [&](std::ostream& os) { write_density(os, rho); });
    return kOk;
}

GridSpec grid_of(const Job& j, ConfigKind c, int A) {
    GridSpec g = default_grid(c, A);
    if (j.phase_nodes > 0) g.phase_nodes = j.phase_nodes;
    if (j.beta_nodes > 0) g.beta_nodes = j.beta_nodes;
    if (!j.allow_inexact) check_grid_exact(c, A, g);
    return g;
}

int cmd_simulate(const Job& j) {
    std::ifstream is = open_input(j.input);
    const DensityMatrix rho = read_density(is);
    rho.validate();
    const ConfigKind c = config_of(j);
    const int A = rho.atoms();
    Job jj = j;
    jj.A = A;
    check_A(jj, 8);
    if (rho.basis != native_basis(c))
        throw InvalidConfig(std::string("density basis '") + basis_name(rho.basis) + "' does not match --config " +
                            config_name(c) + " (expects '" + basis_name(native_basis(c)) + "')");
    const TomogramSamples s = simulate_samples(rho, c, grid_of(j, c, A));
    emit(j.output, [&](std::ostream& os) { write_samples_csv(os, s); });
    return kOk;
}

int cmd_reconstruct(const Job& j) {
    std::ifstream is = open_input(j.input);
    const TomogramSamples s = read_samples_csv(is);
    Job jj = j;
    jj.A = s.A;
    check_A(jj, 8);
    if (!j.allow_inexact) check_grid_exact(s.config, s.A, s.grid);
    check_samples_on_grid(s, j.allow_inexact);
    const ReconstructionReport r = reconstruct(s);
    emit(j.output, [&](std::ostream& os) { write_density(os, r.rho); });
    const std::string report_path = !j.report.empty() ? j.report : (j.output.empty() ? "" : j.output + ".report");
    emit(report_path, [&](std::ostream& os) { write_report(os, r, s.config, s.A); });
    if (!(r.residual < 1e-6)) {
        std::cerr << "residual " << r.residual << " on recoverable entries exceeds 1e-6\n";
        return kResidual;
    }
    return kOk;
}

int cmd_tables(const Job& j) {
    check_A(j, 4);
    const CGTable t = build_cg_table(j.A);
    emit(j.output, [&](std::ostream& os) {
        os << "# reduced CG coefficients of (" << j.A << ",0) x (0," << j.A << ")\n";
        os << "# sigma N1 2I3 n1 2I1 nu*1 2I2 value\n";
        for (const auto& m : t.reduced)
            for (const auto& row : m.rows)
                os << m.sigma << ' ' << m.N1 << ' ' << m.twoI3 << ' ' << row.n1 << ' ' << row.twoI1 << ' '
                   << row.nustar1 << ' ' << row.twoI2 << ' ' << format_double(row.value) << '\n';
    });
    const double unit = t.unitarity_error();
    std::cerr << "unitarity error " << unit << '\n';
    if (unit > 1e-10) return kFixture;
    if (!j.check) return kOk;
    int matched = 0, total = 0;
    double worst = 0.0;
    for (const auto& row : fixtures::cg_rows()) {
        if (row.A != j.A) continue;
        ++total;
        double v = 0.0;
        try {
            v = reduced_cg(t, row.sigma, row.N1, row.twoI3, row.n1, row.twoI1, row.nustar1, row.twoI2);
        } catch (const std::exception&) {
            v = NAN;
        }
        const double dev = std::abs(v - row.value);
        if (dev <= 1e-12) {
            ++matched;
        } else {
            std::cerr << "mismatch sigma=" << row.sigma << " N1=" << row.N1 << " 2I3=" << row.twoI3 << " n1=" << row.n1
                      << ": expected " << row.text << ", got " << format_double(v) << '\n';
        }
        worst = std::isnan(dev) ? dev : std::max(worst, dev);
    }
    if (total == 0) {
        std::cerr << "no fixture values for A=" << j.A << "; unitarity check only\n";
        return kOk;
    }
    std::cerr << matched << " fixture values matched of " << total << ", max deviation " << worst << '\n';
    return matched == total ? kOk : kFixture;
}

int cmd_verify(const Job& j) {
    verify::Options o;
    o.seed = j.seed;
    std::vector<std::string> names = j.suites.empty() ? verify::suite_names() : j.suites;
    for (const auto& n : names) {
        const auto& all = verify::suite_names();
        if (std::find(all.begin(), all.end(), n) == all.end()) throw InvalidConfig("--suite: unknown suite '" + n + "'");
    }
    bool ok = true;
    emit(j.output, [&](std::ostream& os) {
        for (const auto& n : names) {
            const verify::SuiteResult r = verify::run_suite(n, o);
            os << (r.passed ? "PASS " : "FAIL ") << r.name << '\n';
            for (const auto& d : r.details) os << "  " << d << '\n';
            ok = ok && r.passed;
        }
    });
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tomo3: tomograms of A three-level atoms"};
    app.require_subcommand(1);
    Job j;

    auto common = [&](CLI::App* s) {
        s->add_option("-o,--output", j.output, "output path (stdout when omitted)");
        s->add_option("--threads", j.threads, "OpenMP threads (0 = runtime default)");
    };
    auto grid = [&](CLI::App* s) {
        s->add_option("--grid-phase-nodes", j.phase_nodes, "override phase-axis node count");
        s->add_option("--grid-beta-nodes", j.beta_nodes, "override beta-axis node count");
        s->add_flag("--allow-inexact", j.allow_inexact, "accept grids below the exactness counts");
    };

    auto* gen = app.add_subcommand("gen-rho", "write a seeded random or preset density matrix");
    gen->add_option("--A", j.A, "number of atoms");
    gen->add_option("--config", j.config, "nondeg, lambda or xi (selects the basis)");
    gen->add_option("--seed", j.seed, "RNG seed");
    gen->add_option("--preset", j.preset, "random, mixed or pure-ref");
    gen->add_flag("--allow-large", j.allow_large, "lift the A <= 8 cap");
    common(gen);

    auto* sim = app.add_subcommand("simulate", "sample the tomogram of a density matrix on a grid");
    sim->add_option("-i,--input", j.input, "density matrix file")->required();
    sim->add_option("--config", j.config, "nondeg, lambda or xi");
    sim->add_flag("--allow-large", j.allow_large, "lift the A <= 8 cap");
    grid(sim);
    common(sim);

    auto* rec = app.add_subcommand("reconstruct", "invert a tomogram sample file");
    rec->add_option("-i,--input", j.input, "samples CSV")->required();
    rec->add_option("--report", j.report, "report path (default: <output>.report, or stdout)");
    rec->add_flag("--allow-inexact", j.allow_inexact, "accept grids below the exactness counts");
    rec->add_flag("--allow-large", j.allow_large, "lift the A <= 8 cap");
    common(rec);

    auto* tab = app.add_subcommand("tables", "dump reduced CG coefficients");
    tab->add_option("--A", j.A, "number of atoms (<= 4)");
    tab->add_flag("--check", j.check, "compare against the embedded reference tables");
    common(tab);

    auto* ver = app.add_subcommand("verify", "run the verification suites");
    ver->add_option("--suite", j.suites, "suite name (repeatable; default all)");
    ver->add_option("--seed", j.seed, "RNG seed")->default_val(verify::Options{}.seed);
    common(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kInvalid;
    }

    try {
        if (j.threads < 0) throw InvalidConfig("--threads must be >= 0");
        if (j.threads > 0) kernels::set_threads(j.threads);
        if (*gen) return cmd_gen_rho(j);
        if (*sim) return cmd_simulate(j);
        if (*rec) return cmd_reconstruct(j);
        if (*tab) return cmd_tables(j);
        if (*ver) return cmd_verify(j);
    } catch (const GridMismatch& e) {
        std::cerr << "grid mismatch: " << e.what() << '\n';
        return kGrid;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariant;
    } catch (const InvalidConfig& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kVerifyFailed;
    }
    return kOk;
}
