#include "sysid/trajectory_sim.hpp"

#include <cmath>
#include <numbers>

#include "sysid/errors.hpp"

namespace sysid {

namespace {

// Role tags for the per-trajectory stream split.
constexpr std::uint64_t kInputRole = 0x75;        // 'u'
constexpr std::uint64_t kProcessRole = 0x77;      // 'w'
constexpr std::uint64_t kMeasurementRole = 0x76;  // 'v'

void validate_noise(const NoiseSpec& noise) {
    if (noise.sigma_u < 0.0 || noise.sigma_w < 0.0 || noise.sigma_v < 0.0 ||
        !std::isfinite(noise.sigma_u) || !std::isfinite(noise.sigma_w) ||
        !std::isfinite(noise.sigma_v)) {
        throw NonFinite("NoiseSpec: standard deviations must be finite and >= 0");
    }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(splitmix64(seed) ^ splitmix64(~tag));
}

GaussianStream::GaussianStream(std::uint64_t seed) : rng_(seed) {}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // 53-bit uniforms; u1 in (0, 1] keeps the log finite.
    const double u1 =
        (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Vector GaussianStream::next_vector(Index size, double sigma) {
    Vector v(size);
    for (Index i = 0; i < size; ++i) v(i) = sigma * next();
    return v;
}

SingleTrajectory simulate_single(const StateSpace& ss, const NoiseSpec& noise,
                                 Index T, std::uint64_t seed) {
    if (T < 1) throw BadHorizon("simulate_single: T must be at least 1");
    validate_noise(noise);
    const Index n = ss.n();
    const Index p = ss.p();
    const Index m = ss.m();

    GaussianStream input_stream(derive_seed(seed, kInputRole));
    GaussianStream process_stream(derive_seed(seed, kProcessRole));
    GaussianStream measurement_stream(derive_seed(seed, kMeasurementRole));

    SingleTrajectory traj;
    traj.inputs = Matrix(T, p);
    traj.outputs = Matrix(T, m);
    Vector x = Vector::Zero(n);
    for (Index k = 0; k < T; ++k) {
        const Vector u = input_stream.next_vector(p, noise.sigma_u);
        const Vector w = process_stream.next_vector(n, noise.sigma_w);
        const Vector v = measurement_stream.next_vector(m, noise.sigma_v);
        traj.inputs.row(k) = u.transpose();
        traj.outputs.row(k) = (ss.C * x + ss.D * u + v).transpose();
        x = ss.A * x + ss.B * u + w;
    }
    return traj;
}

TrajectoryBatch simulate_batch(const StateSpace& ss, const NoiseSpec& noise,
                               Index K, Index N, std::uint64_t seed) {
    if (K < 1 || N < 1) {
        throw BadHorizon("simulate_batch: K and N must be at least 1");
    }
    TrajectoryBatch batch;
    batch.K = K;
    batch.trajectories.reserve(static_cast<std::size_t>(N));
    for (Index i = 0; i < N; ++i) {
        batch.trajectories.push_back(simulate_single(
            ss, noise, K, derive_seed(seed, static_cast<std::uint64_t>(i))));
    }
    return batch;
}

Matrix simulate_outputs(const StateSpace& ss, const Matrix& inputs) {
    if (inputs.cols() != ss.p()) {
        throw SizeMismatch("simulate_outputs: input width must equal p");
    }
    const Index T = inputs.rows();
    Matrix outputs(T, ss.m());
    Vector x = Vector::Zero(ss.n());
    for (Index k = 0; k < T; ++k) {
        const Vector u = inputs.row(k).transpose();
        outputs.row(k) = (ss.C * x + ss.D * u).transpose();
        x = ss.A * x + ss.B * u;
    }
    return outputs;
}

}  // namespace sysid
