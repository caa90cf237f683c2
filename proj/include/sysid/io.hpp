#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "sysid/bounds.hpp"
#include "sysid/experiments.hpp"
#include "sysid/ho_kalman.hpp"
#include "sysid/lti_model.hpp"
#include "sysid/trajectory_sim.hpp"

namespace sysid {

/// Shortest round-trippable decimal rendering used by every CSV column.
std::string format_double(double value);

nlohmann::json state_space_to_json(const StateSpace& ss);
StateSpace state_space_from_json(const nlohmann::json& j);

nlohmann::json spring_damper_to_json(const SpringDamperParams& params);
SpringDamperParams spring_damper_from_json(const nlohmann::json& j);

nlohmann::json realization_to_json(const Realization& r);

nlohmann::json experiment_config_to_json(const ExperimentConfig& config);
/// Strict parse: unknown keys anywhere in the document are errors.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

nlohmann::json bound_report_to_json(const BoundInputs& in,
                                    const BoundReport& report);

/// Trajectory CSV: traj_id,k,u_1..u_p,y_1..y_m.
void write_trajectory_csv(std::ostream& out, const TrajectoryBatch& batch);
TrajectoryBatch read_trajectory_csv(const std::filesystem::path& path);

/// Headerless m x Kp matrix dump for external comparison of estimates.
void write_markov_csv(std::ostream& out, const MarkovParams& g);

void write_trials_csv(std::ostream& out,
                      const std::vector<TrialRecord>& records);
void write_curves_csv(std::ostream& out,
                      const std::vector<ErrorCurve>& curves);
/// Pole scatter at the sample size whose median error is smallest.
void write_poles_csv(std::ostream& out, const SweepResult& result);

}  // namespace sysid
