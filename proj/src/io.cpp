#include "sysid/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sysid/errors.hpp"

namespace sysid {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& context) {
    if (!j.is_object()) {
        throw ConfigError(context + ": expected an object");
    }
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw ConfigError(context + ": unknown key '" + item.key() + "'");
        }
    }
}

const json& require_key(const json& j, const std::string& key,
                        const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(context + ": missing key '" + key + "'");
    }
    return *it;
}

json matrix_to_json(const Matrix& M) {
    json rows = json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.empty() || !j.front().is_array() ||
        j.front().empty()) {
        throw ConfigError(context + ": expected a nonempty 2-D array");
    }
    const Index rows = static_cast<Index>(j.size());
    const Index cols = static_cast<Index>(j.front().size());
    Matrix M(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            throw ConfigError(context + ": ragged rows");
        }
        for (Index c = 0; c < cols; ++c) {
            M(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    }
    return M;
}

json spectrum_to_json(const Spectrum& s) {
    json out = json::array();
    for (const Complex& v : s) {
        out.push_back(json{{"re", v.real()}, {"im", v.imag()}});
    }
    return out;
}

std::string setting_name(Setting s) {
    return s == Setting::Single ? "single" : "multi";
}

Setting setting_from_name(const std::string& name) {
    if (name == "single") return Setting::Single;
    if (name == "multi") return Setting::Multi;
    throw ConfigError("setting: expected 'single' or 'multi', got '" + name +
                      "'");
}

void write_optional(std::ostream& out, const std::optional<double>& v) {
    if (v) out << format_double(*v);
}

}  // namespace

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

json state_space_to_json(const StateSpace& ss) {
    return json{{"A", matrix_to_json(ss.A)},
                {"B", matrix_to_json(ss.B)},
                {"C", matrix_to_json(ss.C)},
                {"D", matrix_to_json(ss.D)}};
}

StateSpace state_space_from_json(const json& j) {
    check_keys(j, {"A", "B", "C", "D"}, "system");
    return StateSpace(matrix_from_json(require_key(j, "A", "system"), "A"),
                      matrix_from_json(require_key(j, "B", "system"), "B"),
                      matrix_from_json(require_key(j, "C", "system"), "C"),
                      matrix_from_json(require_key(j, "D", "system"), "D"));
}

json spring_damper_to_json(const SpringDamperParams& sd) {
    return json{{"m1", sd.m1}, {"m2", sd.m2}, {"k1", sd.k1}, {"k2", sd.k2},
                {"k3", sd.k3}, {"c1", sd.c1}, {"c2", sd.c2}, {"Ts", sd.Ts}};
}

SpringDamperParams spring_damper_from_json(const json& j) {
    check_keys(j, {"m1", "m2", "k1", "k2", "k3", "c1", "c2", "Ts"},
               "spring_damper");
    SpringDamperParams sd;
    sd.m1 = require_key(j, "m1", "spring_damper").get<double>();
    sd.m2 = require_key(j, "m2", "spring_damper").get<double>();
    sd.k1 = require_key(j, "k1", "spring_damper").get<double>();
    sd.k2 = require_key(j, "k2", "spring_damper").get<double>();
    sd.k3 = require_key(j, "k3", "spring_damper").get<double>();
    sd.c1 = require_key(j, "c1", "spring_damper").get<double>();
    sd.c2 = require_key(j, "c2", "spring_damper").get<double>();
    sd.Ts = require_key(j, "Ts", "spring_damper").get<double>();
    return sd;
}

json realization_to_json(const Realization& r) {
    json sigma = json::array();
    for (Index i = 0; i < r.sigma.size(); ++i) sigma.push_back(r.sigma(i));
    return json{{"A", matrix_to_json(r.Ahat)},
                {"B", matrix_to_json(r.Bhat)},
                {"C", matrix_to_json(r.Chat)},
                {"D", matrix_to_json(r.Dhat)},
                {"sigma", std::move(sigma)},
                {"sigma_np1", r.sigma_np1},
                {"near_singular", r.near_singular}};
}

json experiment_config_to_json(const ExperimentConfig& config) {
    json system;
    if (config.system_name == "custom") {
        if (config.spring_params) {
            system = json{{"spring_damper",
                           spring_damper_to_json(*config.spring_params)}};
        } else if (config.custom_system) {
            system = state_space_to_json(*config.custom_system);
        } else {
            throw ConfigError("config: custom system without matrices");
        }
    } else {
        system = config.system_name;
    }
    return json{{"system", std::move(system)},
                {"setting", setting_name(config.setting)},
                {"K", config.K},
                {"K1", config.K1},
                {"K2", config.K2},
                {"n", config.n},
                {"sweep", config.sweep},
                {"trials", config.trials},
                {"noise",
                 json{{"sigma_u", config.noise.sigma_u},
                      {"sigma_w", config.noise.sigma_w},
                      {"sigma_v", config.noise.sigma_v}}},
                {"delta", config.delta},
                {"calibration_C", config.calibration_C},
                {"base_seed", config.base_seed}};
}

ExperimentConfig experiment_config_from_json(const json& j) {
    check_keys(j,
               {"system", "setting", "K", "K1", "K2", "n", "sweep", "trials",
                "noise", "delta", "calibration_C", "base_seed"},
               "config");
    ExperimentConfig config;

    const json& system = require_key(j, "system", "config");
    if (system.is_string()) {
        config.system_name = system.get<std::string>();
        if (config.system_name != "stable" &&
            config.system_name != "marginal" &&
            config.system_name != "unstable") {
            throw ConfigError("config: unknown builtin system '" +
                              config.system_name + "'");
        }
    } else if (system.is_object() && system.contains("spring_damper")) {
        check_keys(system, {"spring_damper"}, "system");
        config.system_name = "custom";
        config.spring_params = spring_damper_from_json(system["spring_damper"]);
    } else {
        config.system_name = "custom";
        config.custom_system = state_space_from_json(system);
    }

    config.setting =
        setting_from_name(require_key(j, "setting", "config").get<std::string>());
    config.K = require_key(j, "K", "config").get<Index>();
    config.K1 = require_key(j, "K1", "config").get<Index>();
    config.K2 = require_key(j, "K2", "config").get<Index>();
    config.n = require_key(j, "n", "config").get<Index>();
    config.sweep = require_key(j, "sweep", "config").get<std::vector<Index>>();
    config.trials = require_key(j, "trials", "config").get<Index>();

    const json& noise = require_key(j, "noise", "config");
    check_keys(noise, {"sigma_u", "sigma_w", "sigma_v"}, "noise");
    config.noise.sigma_u = require_key(noise, "sigma_u", "noise").get<double>();
    config.noise.sigma_w = require_key(noise, "sigma_w", "noise").get<double>();
    config.noise.sigma_v = require_key(noise, "sigma_v", "noise").get<double>();

    config.delta = require_key(j, "delta", "config").get<double>();
    config.calibration_C =
        require_key(j, "calibration_C", "config").get<double>();
    config.base_seed =
        require_key(j, "base_seed", "config").get<std::uint64_t>();
    config.noise.base_seed = config.base_seed;

    validate_config(config);
    return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open config file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }
    return experiment_config_from_json(j);
}

json bound_report_to_json(const BoundInputs& in, const BoundReport& report) {
    json assumptions = json::array();
    for (const AssumptionFlag& flag : report.assumptions_ok) {
        assumptions.push_back(
            json{{"name", flag.name}, {"satisfied", flag.satisfied}});
    }
    json values{{"phi", report.phi},
                {"sigma_n_Hminus", report.sigma_n_Hminus},
                {"H_norm", report.H_norm},
                {"Hplus_norm", report.Hplus_norm},
                {"F_norm", report.F_norm},
                {"Abar_norm", report.Abar_norm},
                {"C1", report.c1},
                {"C2", report.c2},
                {"sigma_n_upper", report.sigma_n_upper},
                {"min_trajectories", report.min_trajectories}};
    auto set_optional = [&values](const char* name,
                                  const std::optional<double>& v) {
        values[name] = v ? json(*v) : json();
    };
    set_optional("gamma_inf_norm", report.gamma_inf_norm);
    set_optional("sigma_e", report.sigma_e);
    set_optional("delta_single", report.delta_single);
    set_optional("delta_multi", report.delta_multi);
    set_optional("pole_bound_single", report.pole_bound_single);
    set_optional("pole_bound_multi", report.pole_bound_multi);

    return json{{"inputs",
                 json{{"system", state_space_to_json(in.ss)},
                      {"K", in.K},
                      {"K1", in.K1},
                      {"K2", in.K2},
                      {"n", in.n},
                      {"p", in.p},
                      {"m", in.m},
                      {"sigma_u", in.sigma_u},
                      {"sigma_w", in.sigma_w},
                      {"sigma_v", in.sigma_v},
                      {"delta", in.delta},
                      {"Tbar", in.Tbar},
                      {"N", in.N},
                      {"calibration_C", in.calibration_C},
                      {"log_convention", "natural"}}},
                {"values", std::move(values)},
                {"assumptions", std::move(assumptions)}};
}

void write_trajectory_csv(std::ostream& out, const TrajectoryBatch& batch) {
    if (batch.trajectories.empty()) throw SizeMismatch("empty batch");
    const Index p = batch.trajectories.front().inputs.cols();
    const Index m = batch.trajectories.front().outputs.cols();
    out << "traj_id,k";
    for (Index i = 1; i <= p; ++i) out << ",u_" << i;
    for (Index i = 1; i <= m; ++i) out << ",y_" << i;
    out << "\n";
    for (std::size_t id = 0; id < batch.trajectories.size(); ++id) {
        const SingleTrajectory& traj = batch.trajectories[id];
        for (Index k = 0; k < traj.T(); ++k) {
            out << id << "," << k;
            for (Index i = 0; i < p; ++i) {
                out << "," << format_double(traj.inputs(k, i));
            }
            for (Index i = 0; i < m; ++i) {
                out << "," << format_double(traj.outputs(k, i));
            }
            out << "\n";
        }
    }
}

TrajectoryBatch read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open data file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoFailure("empty data file");

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 4 || header[0] != "traj_id" || header[1] != "k") {
        throw IoFailure("data file must start with traj_id,k,u_...,y_...");
    }
    Index p = 0;
    Index m = 0;
    for (std::size_t i = 2; i < header.size(); ++i) {
        if (header[i].rfind("u_", 0) == 0 && m == 0) {
            ++p;
        } else if (header[i].rfind("y_", 0) == 0) {
            ++m;
        } else {
            throw IoFailure("unexpected data column '" + header[i] + "'");
        }
    }
    if (p == 0 || m == 0) throw IoFailure("need at least one u_ and one y_ column");

    std::map<long long, std::vector<std::vector<double>>> groups;
    std::vector<long long> order;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != header.size()) {
            throw IoFailure("data row has wrong column count");
        }
        const long long id = static_cast<long long>(row[0]);
        if (!groups.count(id)) order.push_back(id);
        groups[id].push_back(std::move(row));
    }
    if (order.empty()) throw IoFailure("data file has no rows");

    TrajectoryBatch batch;
    Index common_length = -1;
    for (long long id : order) {
        const auto& rows = groups[id];
        SingleTrajectory traj;
        traj.inputs = Matrix(static_cast<Index>(rows.size()), p);
        traj.outputs = Matrix(static_cast<Index>(rows.size()), m);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<Index>(rows[r][1]) != static_cast<Index>(r)) {
                throw IoFailure("trajectory rows must be ordered k = 0..T-1");
            }
            for (Index i = 0; i < p; ++i) {
                traj.inputs(static_cast<Index>(r), i) = rows[r][2 + i];
            }
            for (Index i = 0; i < m; ++i) {
                traj.outputs(static_cast<Index>(r), i) = rows[r][2 + p + i];
            }
        }
        if (common_length < 0) {
            common_length = traj.T();
        } else if (common_length != traj.T()) {
            common_length = 0;  // ragged; only single-trajectory use is valid
        }
        batch.trajectories.push_back(std::move(traj));
    }
    batch.K = common_length;
    return batch;
}

void write_markov_csv(std::ostream& out, const MarkovParams& g) {
    for (Index r = 0; r < g.G.rows(); ++r) {
        for (Index c = 0; c < g.G.cols(); ++c) {
            if (c > 0) out << ",";
            out << format_double(g.G(r, c));
        }
        out << "\n";
    }
}

void write_trials_csv(std::ostream& out,
                      const std::vector<TrialRecord>& records) {
    out << "setting,sample_size,trial,seed,d_hausdorff,markov_err,"
           "sigma_n_est,near_singular,bound_value,bound_valid\n";
    for (const TrialRecord& r : records) {
        out << setting_name(r.setting) << "," << r.sample_size << ","
            << r.trial_index << "," << r.seed << ",";
        write_optional(out, r.d_hausdorff);
        out << ",";
        write_optional(out, r.markov_err);
        out << ",";
        write_optional(out, r.sigma_n_est);
        out << "," << (r.near_singular ? 1 : 0) << ",";
        write_optional(out, r.bound_value);
        out << "," << (r.bound_valid ? 1 : 0) << "\n";
    }
}

void write_curves_csv(std::ostream& out,
                      const std::vector<ErrorCurve>& curves) {
    out << "sample_size,median,q10,q90,bound_overlay\n";
    for (const ErrorCurve& c : curves) {
        out << c.sample_size << "," << format_double(c.median) << ","
            << format_double(c.q10) << "," << format_double(c.q90) << ",";
        write_optional(out, c.bound_overlay);
        out << "\n";
    }
}

void write_poles_csv(std::ostream& out, const SweepResult& result) {
    out << "kind,sample_size,trial,pole_index,re,im\n";
    if (result.curves.empty()) return;
    const ErrorCurve* best = &result.curves.front();
    for (const ErrorCurve& c : result.curves) {
        if (c.median < best->median) best = &c;
    }
    for (std::size_t i = 0; i < result.true_poles.size(); ++i) {
        out << "true," << best->sample_size << ",-1," << i << ","
            << format_double(result.true_poles[i].real()) << ","
            << format_double(result.true_poles[i].imag()) << "\n";
    }
    for (const TrialRecord& r : result.records) {
        if (r.sample_size != best->sample_size || !r.d_hausdorff) continue;
        for (std::size_t i = 0; i < r.poles.size(); ++i) {
            out << "estimated," << r.sample_size << "," << r.trial_index << ","
                << i << "," << format_double(r.poles[i].real()) << ","
                << format_double(r.poles[i].imag()) << "\n";
        }
    }
}

}  // namespace sysid
