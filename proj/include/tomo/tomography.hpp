#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tomo/dynamics.hpp"
#include "tomo/errors.hpp"
#include "tomo/linalg.hpp"
#include "tomo/su3_cg.hpp"
#include "tomo/wigner.hpp"

namespace tomo {

enum class BasisTag { Occupational, Tilde, LM };

const char* basis_name(BasisTag b);  // occupational, tilde, lm
BasisTag parse_basis(const std::string& s);
// basis in which each configuration's tomogram and reconstruction are expressed
BasisTag native_basis(ConfigKind c);
// index of the tomogram reference state in the native basis
int reference_index(ConfigKind c, int A);

struct DensityMatrix {
    CMat m;
    BasisTag basis = BasisTag::Occupational;

    int dim() const { return static_cast<int>(m.rows()); }
    // A from dim = (A+1)(A+2)/2; throws InvalidConfig otherwise
    int atoms() const;
    // throws InvariantViolation naming the failed check
    void validate(double herm_tol = 1e-12, double trace_tol = 1e-12, double psd_tol = 1e-10) const;
};

int atoms_from_dimension(int dim);

struct TomogramSamples {
    ConfigKind config = ConfigKind::NonDegenerate;
    int A = 1;
    GridSpec grid;
    std::vector<double> params;  // size() * grid.params()
    std::vector<double> weights;
    std::vector<double> omega;

    std::size_t size() const { return omega.size(); }
    const double* point(std::size_t k) const { return params.data() + k * grid.params(); }
};

enum class EntryStatus { Recovered, Inferred, Unrecoverable };

struct RecoverabilityMask {
    BasisTag basis = BasisTag::Occupational;
    int dim = 0;
    std::vector<EntryStatus> status;  // row-major dim x dim

    EntryStatus at(int r, int c) const { return status[static_cast<std::size_t>(r) * dim + c]; }
    int count(EntryStatus s) const;
};

RecoverabilityMask recoverability_mask(ConfigKind c, int A);

enum class Prefactor {
    Dimension,    // dim(mu, mu) from the dimension formula
    Cube,         // (mu + 1)^3 written out directly
    Misstated     // 1/2 (mu + 1)^2 (mu + 2), an arithmetic slip kept for the audit
};

const char* prefactor_name(Prefactor p);

struct ReconstructionReport {
    DensityMatrix rho;  // NaN at unrecoverable entries
    RecoverabilityMask mask;
    double residual = 0.0;  // max |omega - omega(rho_rec)| over the samples
    std::vector<std::pair<int, int>> inferred;
    std::string note;
};

// default (exact) grid for a configuration
GridSpec default_grid(ConfigKind c, int A);
// throws GridMismatch if the spec cannot integrate the configuration exactly
void check_grid_exact(ConfigKind c, int A, const GridSpec& g);

// Row <ref| U(point) in the native basis of the configuration.
class TomogramModel {
public:
    TomogramModel(ConfigKind c, int A);

    ConfigKind config() const { return config_; }
    int A() const { return A_; }
    int dim() const { return dim_; }
    int params() const { return config_ == ConfigKind::NonDegenerate ? 8 : 3; }
    CRow ref_row(const double* point) const;
    double omega(const CMat& rho, const double* point) const;

private:
    ConfigKind config_;
    int A_, dim_;
    Su3Evaluator su3_;
    Su2Rotor su2_;
    CMat lm_;  // columns |LM>, Xi only
};

double simulate_tomogram(const DensityMatrix& rho, const SU3Euler& point);
double simulate_tomogram(const DensityMatrix& rho, ConfigKind c, const SU2Euler& point);
// physical pulse sequence; equals the SU(3) tomogram at tau_to_euler(tau)
double simulate_tomogram(const DensityMatrix& rho, const PulseParams& tau);

TomogramSamples simulate_samples(const DensityMatrix& rho, ConfigKind c, const GridSpec& grid, bool parallel = true);

ReconstructionReport reconstruct_nondeg(const TomogramSamples& s, const CGTable& table,
                                        Prefactor pref = Prefactor::Dimension, bool parallel = true);
ReconstructionReport reconstruct_nondeg(const TomogramSamples& s, Prefactor pref = Prefactor::Dimension);
ReconstructionReport reconstruct_lambda(const TomogramSamples& s, bool parallel = true);
ReconstructionReport reconstruct_xi(const TomogramSamples& s, bool parallel = true);
ReconstructionReport reconstruct(const TomogramSamples& s);

// minimum-norm least-squares inverse of rho -> omega on the sample grid (native basis)
CMat least_squares_reconstruct(const TomogramSamples& s, bool parallel = true);

// throws GridMismatch unless the sample points are exactly the declared grid
void check_samples_on_grid(const TomogramSamples& s, bool allow_inexact = false);

DensityMatrix basis_transform(const DensityMatrix& rho, BasisTag to);
DensityMatrix random_density_matrix(int dim, std::uint64_t seed, BasisTag basis = BasisTag::Occupational);

// max |rho_rec - truth| over entries the mask marks Recovered or Inferred
double masked_max_error(const ReconstructionReport& r, const CMat& truth);
// Frobenius norm over the same entries
double masked_frobenius_error(const ReconstructionReport& r, const CMat& truth);

}  // namespace tomo
