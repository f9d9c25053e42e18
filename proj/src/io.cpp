#include "tomo/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace tomo {

namespace {

const char* const kSu3Cols[] = {"alpha1", "beta1", "gamma1", "alpha2", "beta2", "alpha3", "beta3", "gamma3"};
const char* const kSu2Cols[] = {"alpha", "beta", "gamma"};

double parse_double(const std::string& tok, const std::string& what) {
    if (tok == "nan" || tok == "-nan") return std::nan("");
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw InvalidConfig("cannot parse " + what + " value '" + tok + "'");
    }
}

char status_char(EntryStatus s) {
    switch (s) {
        case EntryStatus::Recovered: return 'R';
        case EntryStatus::Inferred: return 'N';
        case EntryStatus::Unrecoverable: return '-';
    }
    return '?';
}

}  // namespace

std::string basis_label(BasisTag b, int A, int k) {
    if (b == BasisTag::LM) {
        const LMLabel l = lm_labels(A).at(k);
        return "|" + std::to_string(l.L) + "," + std::to_string(l.M) + ">";
    }
    const OccupationState n = BasisIndexMap(A).state(k);
    return std::string(b == BasisTag::Tilde ? "|~" : "|") + std::to_string(n.n1) + std::to_string(n.n2) +
           std::to_string(n.n3) + ">";
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_samples_csv(std::ostream& os, const TomogramSamples& s) {
    os << "# config " << config_name(s.config) << "\n";
    os << "# A " << s.A << "\n";
    os << "# grid " << grid_kind_name(s.grid.kind) << " " << s.grid.phase_nodes << " " << s.grid.beta_nodes << "\n";
    const int np = s.grid.params();
    for (int j = 0; j < np; ++j) os << (np == 8 ? kSu3Cols[j] : kSu2Cols[j]) << ",";
    os << "weight,omega\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double* p = s.point(k);
        for (int j = 0; j < np; ++j) os << format_double(p[j]) << ",";
        os << format_double(s.weights[k]) << "," << format_double(s.omega[k]) << "\n";
    }
}

TomogramSamples read_samples_csv(std::istream& is) {
    TomogramSamples s;
    bool have_config = false, have_A = false, have_grid = false, have_cols = false;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string key;
            ls >> key;
            if (key == "config") {
                std::string v;
                ls >> v;
                s.config = parse_config(v);
                have_config = true;
            } else if (key == "A") {
                if (!(ls >> s.A)) throw InvalidConfig("samples header: bad A");
                have_A = true;
            } else if (key == "grid") {
                std::string kind;
                if (!(ls >> kind >> s.grid.phase_nodes >> s.grid.beta_nodes))
                    throw InvalidConfig("samples header: bad grid line");
                s.grid.kind = parse_grid_kind(kind);
                have_grid = true;
            }
            continue;
        }
        if (!have_cols) {
            have_cols = true;  // column names
            continue;
        }
        const int np = s.grid.params();
        std::vector<std::string> tok;
        std::stringstream ls(line);
        std::string t;
        while (std::getline(ls, t, ',')) tok.push_back(t);
        if (static_cast<int>(tok.size()) != np + 2)
            throw InvalidConfig("samples row has " + std::to_string(tok.size()) + " fields, expected " +
                                std::to_string(np + 2));
        for (int j = 0; j < np; ++j) s.params.push_back(parse_double(tok[j], "angle"));
        s.weights.push_back(parse_double(tok[np], "weight"));
        s.omega.push_back(parse_double(tok[np + 1], "omega"));
    }
    if (!have_config || !have_A || !have_grid) throw InvalidConfig("samples file lacks config/A/grid header");
    for (double w : s.omega)
        if (!(w >= -1e-12 && w <= 1.0 + 1e-12)) throw InvariantViolation("tomogram value outside [0, 1]");
    return s;
}

void write_density(std::ostream& os, const DensityMatrix& rho) {
    os << "dimension " << rho.dim() << "\n";
    os << "basis " << basis_name(rho.basis) << "\n";
    for (int i = 0; i < rho.dim(); ++i) {
        for (int j = 0; j < rho.dim(); ++j) {
            if (j) os << "  ";
            os << format_double(rho.m(i, j).real()) << " " << format_double(rho.m(i, j).imag());
        }
        os << "\n";
    }
}

DensityMatrix read_density(std::istream& is) {
    std::string key, tag;
    int n = 0;
    if (!(is >> key >> n) || key != "dimension" || n < 1) throw InvalidConfig("density file: expected 'dimension N'");
    if (!(is >> key >> tag) || key != "basis") throw InvalidConfig("density file: expected 'basis TAG'");
    DensityMatrix rho;
    rho.basis = parse_basis(tag);
    rho.m.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::string re, im;
            if (!(is >> re >> im)) throw InvalidConfig("density file: too few entries");
            rho.m(i, j) = cplx(parse_double(re, "matrix"), parse_double(im, "matrix"));
        }
    return rho;
}

void write_report(std::ostream& os, const ReconstructionReport& r, ConfigKind c, int A) {
    const int total = r.mask.dim * r.mask.dim;
    os << "config " << config_name(c) << "\n";
    os << "A " << A << "\n";
    os << "basis " << basis_name(r.mask.basis) << "\n";
    os << "recovered " << r.mask.count(EntryStatus::Recovered) << "/" << total << "\n";
    os << "normalization_inferred " << r.mask.count(EntryStatus::Inferred) << "\n";
    os << "unrecoverable " << r.mask.count(EntryStatus::Unrecoverable) << "\n";
    os << "residual " << format_double(r.residual) << "\n";
    if (!r.note.empty()) os << "note " << r.note << "\n";
    os << "mask (R recovered, N normalization, - absent)\n";
    for (int i = 0; i < r.mask.dim; ++i) {
        for (int j = 0; j < r.mask.dim; ++j) os << (j ? " " : "") << status_char(r.mask.at(i, j));
        os << "\n";
    }
    if (r.mask.count(EntryStatus::Unrecoverable) > 0) {
        os << "absent";
        for (int i = 0; i < r.mask.dim; ++i)
            for (int j = 0; j < r.mask.dim; ++j)
                if (r.mask.at(i, j) == EntryStatus::Unrecoverable)
                    os << " rho[" << basis_label(r.mask.basis, A, i) << "," << basis_label(r.mask.basis, A, j) << "]";
        os << "\n";
    }
}

}  // namespace tomo
