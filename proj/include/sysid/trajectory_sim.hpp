#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sysid/lti_model.hpp"
#include "sysid/types.hpp"

namespace sysid {

/// Standard deviations of the Gaussian input, process noise and
/// measurement noise, plus the seed the experiment harness threads
/// through trial derivation.
struct NoiseSpec {
    double sigma_u = 1.0;
    double sigma_w = 0.0;
    double sigma_v = 0.0;
    std::uint64_t base_seed = 0;
};

/// One input/output record with x0 = 0; inputs are T x p, outputs T x m,
/// one row per time step.
struct SingleTrajectory {
    Matrix inputs;
    Matrix outputs;

    Index T() const { return inputs.rows(); }
};

struct TrajectoryBatch {
    std::vector<SingleTrajectory> trajectories;
    Index K = 0;

    Index N() const { return static_cast<Index>(trajectories.size()); }
};

/// SplitMix64 step; the basis of all seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

/// Splittable derivation of an independent sub-seed from (seed, tag).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Deterministic standard-normal stream: mt19937_64 uniforms through
/// Box-Muller, so the draw sequence is identical on every platform.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed);

    double next();
    Vector next_vector(Index size, double sigma);

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

SingleTrajectory simulate_single(const StateSpace& ss, const NoiseSpec& noise,
                                 Index T, std::uint64_t seed);

/// N independent length-K trajectories; trajectory i is seeded by
/// derive_seed(seed, i) so the batch is reproducible and order-independent.
TrajectoryBatch simulate_batch(const StateSpace& ss, const NoiseSpec& noise,
                               Index K, Index N, std::uint64_t seed);

/// Noise-free response to a given input sequence (T x p), x0 = 0.
Matrix simulate_outputs(const StateSpace& ss, const Matrix& inputs);

}  // namespace sysid
