#pragma once

#include "sysid/types.hpp"

namespace sysid {

/// Thin SVD M = U * diag(S) * V^T with S sorted non-increasing and
/// min(rows, cols) singular values.
struct SvdTriple {
    Matrix U;
    Vector S;
    Matrix V;
};

/// Best rank-n approximation L = U1 * Sigma1 * V1^T together with the
/// retained top-n triple.
struct RankTruncation {
    Matrix L;
    SvdTriple triple;
};

SvdTriple svd(const Matrix& M);

RankTruncation best_rank_n(const Matrix& M, Index n);

/// Moore-Penrose pseudoinverse. Singular values below
/// max(rows, cols) * eps * sigma_max are treated as zero.
Matrix pinv(const Matrix& M);

/// Pseudoinverse plus the numerical rank it used, for callers that must
/// reject rank-deficient problems instead of silently regularizing them.
struct PinvResult {
    Matrix pinv;
    Index rank;
    double cutoff;
};
PinvResult pinv_detailed(const Matrix& M);

/// Numerical-rank cutoff rule shared by pinv and the estimators.
double rank_cutoff(Index rows, Index cols, double sigma_max);

/// Eigenvalues with multiplicity, sorted by (real desc, imag desc).
Spectrum eig(const Matrix& M);

/// Largest singular value.
double spectral_norm(const Matrix& M);

/// Largest eigenvalue modulus of a square matrix.
double spectral_radius(const Matrix& M);

/// Matrix exponential (scaling-and-squaring with a Pade core).
Matrix expm(const Matrix& M);

/// Solves A*X*A^T - X + W = 0 for the unique X when spr(A) < 1.
/// W must be symmetric; the returned X is symmetrized.
Matrix dlyap(const Matrix& A, const Matrix& W);

}  // namespace sysid
