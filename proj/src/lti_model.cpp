#include "sysid/lti_model.hpp"

#include <cmath>
#include <utility>

#include "sysid/errors.hpp"
#include "sysid/numerics.hpp"

namespace sysid {

StateSpace::StateSpace(Matrix A_, Matrix B_, Matrix C_, Matrix D_)
    : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)), D(std::move(D_)) {
    if (A.rows() != A.cols()) throw NonSquare("StateSpace: A must be square");
    if (B.rows() != A.rows()) throw SizeMismatch("StateSpace: B row count");
    if (C.cols() != A.rows()) throw SizeMismatch("StateSpace: C column count");
    if (D.rows() != C.rows() || D.cols() != B.cols()) {
        throw SizeMismatch("StateSpace: D shape");
    }
    if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !D.allFinite()) {
        throw NonFinite("StateSpace: entries must be finite");
    }
}

double StateSpace::spectral_radius() const {
    return sysid::spectral_radius(A);
}

StabilityClass StateSpace::stability_class() const {
    const double r = spectral_radius();
    if (r < 1.0 - 1e-9) return StabilityClass::Stable;
    if (r <= 1.0 + 1e-9) return StabilityClass::Marginal;
    return StabilityClass::Unstable;
}

MarkovParams markov_matrix(const StateSpace& ss, Index K) {
    if (K < 2) throw BadHorizon("markov_matrix: K must be at least 2");
    const Index p = ss.p();
    const Index m = ss.m();
    Matrix G(m, K * p);
    G.block(0, 0, m, p) = ss.D;
    Matrix CAk = ss.C;  // C * A^{k-1} accumulated across blocks
    for (Index k = 1; k < K; ++k) {
        G.block(0, k * p, m, p) = CAk * ss.B;
        CAk = CAk * ss.A;
    }
    return MarkovParams{std::move(G), K, p, m};
}

HankelSet hankel_from_markov(const MarkovParams& g, Index K1, Index K2,
                             Index n) {
    if (K1 < 1 || K2 < 1 || K1 + K2 + 1 != g.K) {
        throw BadPartition("hankel_from_markov: K1 + K2 + 1 must equal K");
    }
    const Index m = g.m;
    const Index p = g.p;
    if (n < 1 || n > std::min(K1 * m, K2 * p)) {
        throw BadRank("hankel_from_markov: n out of range");
    }
    Matrix H(K1 * m, (K2 + 1) * p);
    for (Index i = 0; i < K1; ++i) {
        for (Index j = 0; j <= K2; ++j) {
            H.block(i * m, j * p, m, p) = g.block(i + j + 1);
        }
    }
    Matrix Hplus = H.rightCols(K2 * p);
    Matrix Hminus = H.leftCols(K2 * p);
    Matrix L = best_rank_n(Hminus, n).L;
    return HankelSet{std::move(H), std::move(Hplus), std::move(Hminus),
                     std::move(L), K1, K2, n};
}

ExtendedMatrices extended_matrices(const StateSpace& ss, Index K1, Index K2,
                                   Index K) {
    if (K1 < 1 || K2 < 1) throw BadPartition("extended_matrices: K1, K2 >= 1");
    if (K < 2) throw BadHorizon("extended_matrices: K must be at least 2");
    const Index n = ss.n();
    const Index p = ss.p();
    const Index m = ss.m();

    Matrix O(K1 * m, n);
    Matrix CAk = ss.C;
    for (Index k = 0; k < K1; ++k) {
        O.block(k * m, 0, m, n) = CAk;
        if (k + 1 < K1) CAk = CAk * ss.A;
    }

    Matrix Q(n, (K2 + 1) * p);
    Matrix AkB = ss.B;
    for (Index k = 0; k <= K2; ++k) {
        Q.block(0, k * p, n, p) = AkB;
        if (k < K2) AkB = ss.A * AkB;
    }

    Matrix F = Matrix::Zero(m, K * n);
    Matrix CAj = ss.C;
    for (Index k = 1; k < K; ++k) {
        F.block(0, k * n, m, n) = CAj;
        CAj = CAj * ss.A;
    }
    return ExtendedMatrices{std::move(O), std::move(Q), std::move(F)};
}

ContinuousModel spring_damper_continuous(const SpringDamperParams& sd) {
    if (sd.m1 <= 0.0 || sd.m2 <= 0.0) {
        throw BadMass("spring_damper_continuous: masses must be positive");
    }
    Matrix Ac(4, 4);
    Ac << 0, 1, 0, 0,                                                      //
        -(sd.k1 + sd.k2) / sd.m1, -(sd.c1 + sd.c2) / sd.m1, sd.k2 / sd.m1,
        sd.c2 / sd.m1,                                                     //
        0, 0, 0, 1,                                                        //
        sd.k2 / sd.m2, sd.c2 / sd.m2, -(sd.k2 + sd.k3) / sd.m2,
        -sd.c2 / sd.m2;
    Matrix Bc = Matrix::Zero(4, 2);
    Bc(1, 0) = 1.0 / sd.m1;
    Bc(3, 1) = 1.0 / sd.m2;
    Matrix Cc = Matrix::Zero(2, 4);
    Cc(0, 0) = 1.0;
    Cc(1, 2) = 1.0;
    return ContinuousModel{std::move(Ac), std::move(Bc), std::move(Cc)};
}

StateSpace zoh_discretize(const Matrix& Ac, const Matrix& Bc, const Matrix& Cc,
                          double Ts) {
    if (Ts <= 0.0) throw BadHorizon("zoh_discretize: Ts must be positive");
    if (Ac.rows() != Ac.cols()) throw NonSquare("zoh_discretize: Ac");
    const Index n = Ac.rows();
    const Index p = Bc.cols();
    Matrix aug = Matrix::Zero(n + p, n + p);
    aug.topLeftCorner(n, n) = Ac;
    aug.topRightCorner(n, p) = Bc;
    Matrix E = expm(aug * Ts);
    StateSpace ss;
    ss.A = E.topLeftCorner(n, n);
    ss.B = E.topRightCorner(n, p);
    ss.C = Cc;
    ss.D = Matrix::Zero(Cc.rows(), p);
    return ss;
}

}  // namespace sysid
