#pragma once

#include "sysid/lti_model.hpp"
#include "sysid/trajectory_sim.hpp"
#include "sysid/types.hpp"

namespace sysid {

/// Assembled least-squares problem for Markov-parameter estimation.
/// Single setting: Y is Tbar x m (rows y_{K-1} .. y_{T-1}) and U is
/// Tbar x Kp with row k stacking (u_k; u_{k-1}; ...; u_{k-K+1}),
/// most recent first. Multi setting: Y is m x NK and U is pK x NK,
/// concatenating the per-trajectory upper block-triangular Toeplitz
/// input matrices.
struct RegressionData {
    Matrix Y;
    Matrix U;
    Setting setting = Setting::Single;
    Index K = 0;
    Index p = 0;
    Index m = 0;
    Index count = 0;  // Tbar (single) or N (multi)
};

RegressionData assemble_single(const SingleTrajectory& traj, Index K);

/// Ghat = (pinv(U) * Y)^T. Throws RankDeficient when U does not have full
/// column rank at the pinv cutoff (insufficient excitation or Tbar < Kp).
MarkovParams estimate_single(const SingleTrajectory& traj, Index K);

RegressionData assemble_multi(const TrajectoryBatch& batch);

/// Ghat = Y * pinv(U). Throws RankDeficient when U*U^T is numerically
/// singular (generically requires N >= p).
MarkovParams estimate_multi(const TrajectoryBatch& batch);

}  // namespace sysid
