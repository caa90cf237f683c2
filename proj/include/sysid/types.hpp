#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace sysid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using Complex = std::complex<double>;

/// Eigenvalue multiset, kept sorted by (real desc, imag desc) for
/// reproducible output. Conjugate symmetry is not enforced: estimated
/// spectra of real matrices are conjugate-symmetric only up to numerics.
using Spectrum = std::vector<Complex>;

/// Canonical ordering used everywhere a Spectrum is produced.
void sort_spectrum(Spectrum& s);

enum class StabilityClass { Stable, Marginal, Unstable };

enum class Setting { Single, Multi };

}  // namespace sysid
