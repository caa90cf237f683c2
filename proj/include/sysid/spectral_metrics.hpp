#pragma once

#include "sysid/types.hpp"

namespace sysid {

/// sv_a(b) = max over mu in b of min over lambda in a of |lambda - mu|.
/// Exhaustive O(n^2) evaluation; this is the spectrum variation, not the
/// optimal-assignment distance.
double spectrum_variation(const Spectrum& a, const Spectrum& b);

/// Hausdorff distance max(sv_a(b), sv_b(a)); a metric on equal-cardinality
/// eigenvalue multisets.
double hausdorff(const Spectrum& a, const Spectrum& b);

/// Elsner perturbation bound (||A|| + ||B||)^{1-1/n} * ||A - B||^{1/n}
/// with spectral norms; dominates hausdorff(eig(A), eig(B)).
double elsner_bound(const Matrix& A, const Matrix& B);

}  // namespace sysid
