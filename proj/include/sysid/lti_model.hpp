#pragma once

#include "sysid/types.hpp"

namespace sysid {

/// Discrete-time state-space model x+ = A x + B u + w, y = C x + D u + v.
struct StateSpace {
    Matrix A;  // n x n
    Matrix B;  // n x p
    Matrix C;  // m x n
    Matrix D;  // m x p

    StateSpace() = default;
    StateSpace(Matrix A_, Matrix B_, Matrix C_, Matrix D_);

    Index n() const { return A.rows(); }
    Index p() const { return B.cols(); }
    Index m() const { return C.rows(); }

    double spectral_radius() const;
    StabilityClass stability_class() const;
};

/// Two-mass spring-damper parameters. Spring constants may be negative
/// (active-control elements); masses and the sampling period may not.
struct SpringDamperParams {
    double m1 = 1.0;
    double m2 = 1.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double Ts = 0.1;
};

/// First K Markov parameters G = [D, CB, CAB, ..., C A^{K-2} B], m x Kp.
struct MarkovParams {
    Matrix G;
    Index K = 0;
    Index p = 0;
    Index m = 0;

    /// Block k (m x p), k in [0, K).
    Eigen::Block<const Matrix> block(Index k) const {
        return G.block(0, k * p, m, p);
    }
};

/// Block Hankel matrix of Markov blocks plus its trimmed variants:
/// Hplus drops the left-most block column of H, Hminus the right-most,
/// and L is the best rank-n approximation of Hminus.
struct HankelSet {
    Matrix H;       // K1*m x (K2+1)*p
    Matrix Hplus;   // K1*m x K2*p
    Matrix Hminus;  // K1*m x K2*p
    Matrix L;
    Index K1 = 0;
    Index K2 = 0;
    Index n = 0;
};

/// Extended observability/controllability matrices and the noise-to-output
/// matrix F = [0, C, CA, ..., C A^{K-2}].
struct ExtendedMatrices {
    Matrix O;  // K1*m x n
    Matrix Q;  // n x (K2+1)*p
    Matrix F;  // m x K*n
};

/// Continuous-time (Ac, Bc, Cc) triple prior to discretization.
struct ContinuousModel {
    Matrix Ac;
    Matrix Bc;
    Matrix Cc;
};

MarkovParams markov_matrix(const StateSpace& ss, Index K);

HankelSet hankel_from_markov(const MarkovParams& g, Index K1, Index K2,
                             Index n);

ExtendedMatrices extended_matrices(const StateSpace& ss, Index K1, Index K2,
                                   Index K);

/// State order (q1, q1dot, q2, q2dot); outputs (q1, q2); inputs (f1, f2).
ContinuousModel spring_damper_continuous(const SpringDamperParams& params);

/// Zero-order-hold discretization via the augmented matrix exponential
/// exp([[Ac, Bc], [0, 0]] * Ts); D is zero.
StateSpace zoh_discretize(const Matrix& Ac, const Matrix& Bc, const Matrix& Cc,
                          double Ts);

}  // namespace sysid
