#pragma once

#include <iosfwd>
#include <string>

#include "tomo/tomography.hpp"

namespace tomo {

// "|n1n2n3>", "|~n1n2n3>" or "|L,M>"
std::string basis_label(BasisTag b, int A, int k);

// 17 significant digits, round-trip exact
std::string format_double(double x);

// '#' header lines carry config, A and grid; one row per node: angles, weight, omega
void write_samples_csv(std::ostream& os, const TomogramSamples& s);
TomogramSamples read_samples_csv(std::istream& is);

// "dimension N", "basis TAG", then N rows of re im pairs
void write_density(std::ostream& os, const DensityMatrix& rho);
DensityMatrix read_density(std::istream& is);

void write_report(std::ostream& os, const ReconstructionReport& r, ConfigKind c, int A);

}  // namespace tomo
