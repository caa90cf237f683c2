#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sysid/bounds.hpp"
#include "sysid/lti_model.hpp"
#include "sysid/trajectory_sim.hpp"
#include "sysid/types.hpp"

namespace sysid {

/// Full description of a Monte Carlo sweep. The sweep values are
/// trajectory lengths T in the single setting and trajectory counts N in
/// the multi setting (total sample counts are then K*N and T).
struct ExperimentConfig {
    std::string system_name = "stable";  // stable | marginal | unstable | custom
    std::optional<StateSpace> custom_system;
    std::optional<SpringDamperParams> spring_params;
    Setting setting = Setting::Multi;
    Index K = 15;
    Index K1 = 8;
    Index K2 = 6;
    Index n = 4;
    std::vector<Index> sweep;
    Index trials = 100;
    NoiseSpec noise;
    double delta = 0.05;
    double calibration_C = 1.0;
    std::uint64_t base_seed = 0;
};

/// Checks the structural invariants (K = K1 + K2 + 1, K1/K2 >= n,
/// trials >= 1, sweep strictly increasing and nonempty).
void validate_config(const ExperimentConfig& config);

/// The system the config describes (builtin name, spring-damper
/// parameters, or explicit matrices).
StateSpace resolve_system(const ExperimentConfig& config);

/// One pipeline run: simulate, estimate, realize, measure the pole error.
/// d_hausdorff is absent when the estimation step failed (RankDeficient);
/// such trials are recorded, never aborted.
struct TrialRecord {
    Setting setting = Setting::Multi;
    Index sample_size = 0;
    Index trial_index = 0;
    std::uint64_t seed = 0;
    std::optional<double> d_hausdorff;
    std::optional<double> markov_err;
    std::optional<double> sigma_n_est;
    bool near_singular = false;
    std::optional<double> bound_value;
    bool bound_valid = false;
    Spectrum poles;  // estimated poles, used for the scatter export
};

/// Per-sample-size error statistics across the successful trials.
struct ErrorCurve {
    Index sample_size = 0;
    double median = 0.0;
    double q10 = 0.0;
    double q90 = 0.0;
    std::optional<double> bound_overlay;
    Index failures = 0;
};

struct SweepResult {
    std::vector<TrialRecord> records;  // ordered by (sample_size, trial)
    std::vector<ErrorCurve> curves;
    Spectrum true_poles;
};

/// The three benchmark spring-damper variants discretized at Ts = 0.1.
StateSpace builtin_system(const std::string& name);

TrialRecord run_trial(const StateSpace& ss, const ExperimentConfig& config,
                      Index sample_size, Index trial_index);

/// Runs the full sweep x trials grid. Deterministic for a given config:
/// trials own derived seeds, so any execution order (including the
/// threaded one) produces identical records.
SweepResult run_sweep(const ExperimentConfig& config, int threads = 1);

/// Writes trials.csv, curves.csv, poles.csv and config.json into outdir.
/// Numbers are printed with 17 significant digits so identical configs
/// reproduce files byte for byte.
void export_results(const SweepResult& result, const ExperimentConfig& config,
                    const std::filesystem::path& outdir);

/// Interpolating sample quantile (q in [0, 1]) of an unsorted sample.
double quantile(std::vector<double> values, double q);

}  // namespace sysid
