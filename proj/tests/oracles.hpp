#pragma once

// Test-only oracles, deliberately independent of the library code paths
// they cross-check (characteristic polynomial + Durand-Kerner instead of
// the SVD/eig kernels, truncated series instead of the Lyapunov solver).

#include <random>
#include <vector>

#include "sysid/lti_model.hpp"
#include "sysid/types.hpp"

namespace sysid::testing {

/// Monic characteristic polynomial coefficients of M via
/// Faddeev-LeVerrier: p(x) = x^n + c[0] x^{n-1} + ... + c[n-1].
std::vector<double> char_poly(const Matrix& M);

/// All roots of the monic polynomial x^d + c[0] x^{d-1} + ... + c[d-1]
/// by Durand-Kerner iteration.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);

/// Truncated series sum_{i<terms} A^i W (A^T)^i.
Matrix lyapunov_series(const Matrix& A, const Matrix& W, int terms);

/// Worst relative residual of the four Moore-Penrose axioms for P ~ M^+.
double mp_axioms_residual(const Matrix& M, const Matrix& P);

Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols,
                     double scale = 1.0);

/// Random contraction (sigma_max <= radius < 1), hence a stable matrix
/// with ||A^k|| <= 1 for all k.
Matrix random_contraction(std::mt19937_64& rng, Index n, double radius);

Spectrum random_spectrum(std::mt19937_64& rng, Index n, double scale = 1.0);

/// Random minimal-by-construction system: diagonal A with distinct
/// eigenvalue magnitudes in (0, radius), entries of B and C bounded away
/// from zero.
StateSpace random_diagonal_system(std::mt19937_64& rng, Index n, Index p,
                                  Index m, double radius = 0.95);

}  // namespace sysid::testing
