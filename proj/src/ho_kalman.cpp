#include "sysid/ho_kalman.hpp"

#include <cmath>

#include "sysid/errors.hpp"
#include "sysid/numerics.hpp"

namespace sysid {

Realization ho_kalman(const MarkovParams& g, Index n, Index K1, Index K2) {
    HankelSet hankel = hankel_from_markov(g, K1, K2, n);
    const Index min_dim = std::min(hankel.Hminus.rows(), hankel.Hminus.cols());

    SvdTriple full = svd(hankel.Hminus);
    Vector sigma = full.S.head(n);
    Vector sqrt_sigma = sigma.array().sqrt();

    Realization r;
    r.sigma = sigma;
    r.sigma_np1 = n < min_dim ? full.S(n) : 0.0;
    r.near_singular = sigma(n - 1) <= 1e-10 * sigma(0);
    r.Ohat = full.U.leftCols(n) * sqrt_sigma.asDiagonal();
    r.Qhat = sqrt_sigma.asDiagonal() * full.V.leftCols(n).transpose();
    r.Dhat = g.block(0);
    r.Chat = r.Ohat.topRows(g.m);
    r.Bhat = r.Qhat.leftCols(g.p);
    r.Ahat = pinv(r.Ohat) * hankel.Hplus * pinv(r.Qhat);
    return r;
}

MarkovParams realization_markov(const Realization& r, Index K) {
    StateSpace ss(r.Ahat, r.Bhat, r.Chat, r.Dhat);
    return markov_matrix(ss, K);
}

}  // namespace sysid
