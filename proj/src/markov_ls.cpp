#include "sysid/markov_ls.hpp"

#include "sysid/errors.hpp"
#include "sysid/numerics.hpp"

namespace sysid {

RegressionData assemble_single(const SingleTrajectory& traj, Index K) {
    const Index T = traj.T();
    if (K < 1) throw BadHorizon("assemble_single: K must be at least 1");
    if (T < K) throw TooShort("assemble_single: need T >= K");
    const Index p = traj.inputs.cols();
    const Index m = traj.outputs.cols();
    const Index Tbar = T - K + 1;

    RegressionData data;
    data.setting = Setting::Single;
    data.K = K;
    data.p = p;
    data.m = m;
    data.count = Tbar;
    data.Y = traj.outputs.bottomRows(Tbar);
    data.U = Matrix(Tbar, K * p);
    for (Index r = 0; r < Tbar; ++r) {
        const Index k = K - 1 + r;
        for (Index j = 0; j < K; ++j) {
            data.U.block(r, j * p, 1, p) = traj.inputs.row(k - j);
        }
    }
    return data;
}

MarkovParams estimate_single(const SingleTrajectory& traj, Index K) {
    RegressionData data = assemble_single(traj, K);
    PinvResult ls = pinv_detailed(data.U);
    if (ls.rank < data.U.cols()) {
        throw RankDeficient(
            "estimate_single: regressor is rank deficient "
            "(insufficient excitation or Tbar < K*p)");
    }
    Matrix Ghat = (ls.pinv * data.Y).transpose();
    return MarkovParams{std::move(Ghat), data.K, data.p, data.m};
}

RegressionData assemble_multi(const TrajectoryBatch& batch) {
    const Index N = batch.N();
    if (N < 1) throw BadHorizon("assemble_multi: need N >= 1");
    const Index K = batch.K;
    const Index p = batch.trajectories.front().inputs.cols();
    const Index m = batch.trajectories.front().outputs.cols();

    RegressionData data;
    data.setting = Setting::Multi;
    data.K = K;
    data.p = p;
    data.m = m;
    data.count = N;
    data.Y = Matrix(m, N * K);
    data.U = Matrix::Zero(p * K, N * K);
    for (Index i = 0; i < N; ++i) {
        const SingleTrajectory& traj = batch.trajectories[static_cast<std::size_t>(i)];
        if (traj.T() != K) {
            throw SizeMismatch("assemble_multi: every trajectory must have length K");
        }
        data.Y.block(0, i * K, m, K) = traj.outputs.transpose();
        for (Index k = 0; k < K; ++k) {
            for (Index r = 0; r <= k; ++r) {
                data.U.block(r * p, i * K + k, p, 1) =
                    traj.inputs.row(k - r).transpose();
            }
        }
    }
    return data;
}

MarkovParams estimate_multi(const TrajectoryBatch& batch) {
    RegressionData data = assemble_multi(batch);
    PinvResult ls = pinv_detailed(data.U);
    if (ls.rank < data.U.rows()) {
        throw RankDeficient(
            "estimate_multi: input matrix is rank deficient "
            "(U*U^T numerically singular; generically requires N >= p)");
    }
    Matrix Ghat = data.Y * ls.pinv;
    return MarkovParams{std::move(Ghat), data.K, data.p, data.m};
}

}  // namespace sysid
