#pragma once

#include "sysid/lti_model.hpp"
#include "sysid/types.hpp"

namespace sysid {

/// Balanced realization recovered from a Markov parameter matrix.
/// Ohat = U1 * Sigma1^{1/2} and Qhat = Sigma1^{1/2} * V1^T factor the
/// rank-n truncation L of Hminus, so Qhat has K2 block columns.
struct Realization {
    Matrix Ahat;  // n x n
    Matrix Bhat;  // n x p
    Matrix Chat;  // m x n
    Matrix Dhat;  // m x p
    Matrix Ohat;  // K1*m x n
    Matrix Qhat;  // n x K2*p
    Vector sigma;        // retained singular values, non-increasing
    double sigma_np1 = 0.0;  // (n+1)-th singular value of Hminus, 0 if absent
    bool near_singular = false;
};

/// Ho-Kalman realization: truncate Hminus to rank n, factor through the
/// SVD, and read the system matrices back. near_singular is set (not an
/// error) when sigma_n(L) <= 1e-10 * sigma_1(L), so Monte Carlo sweeps
/// keep running through ill-conditioned draws.
Realization ho_kalman(const MarkovParams& g, Index n, Index K1, Index K2);

/// First K Markov parameters of the recovered realization, for round-trip
/// comparison against the input G.
MarkovParams realization_markov(const Realization& r, Index K);

}  // namespace sysid
