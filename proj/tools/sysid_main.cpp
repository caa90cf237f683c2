#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sysid/bounds.hpp"
#include "sysid/errors.hpp"
#include "sysid/experiments.hpp"
#include "sysid/ho_kalman.hpp"
#include "sysid/io.hpp"
#include "sysid/markov_ls.hpp"
#include "sysid/numerics.hpp"

namespace {

using nlohmann::json;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw sysid::IoFailure("cannot write " + out_path);
    out << j.dump(2) << "\n";
}

int run_experiment(const std::string& config_path, const std::string& outdir,
                   int threads) {
    sysid::ExperimentConfig config =
        sysid::load_experiment_config(config_path);
    sysid::SweepResult result = sysid::run_sweep(config, threads);
    sysid::export_results(result, config, outdir);
    std::size_t failures = 0;
    for (const sysid::TrialRecord& rec : result.records) {
        if (!rec.d_hausdorff) ++failures;
    }
    std::cout << "wrote " << result.records.size() << " trials ("
              << failures << " failed) to " << outdir << "\n";
    return 0;
}

int report_bounds(const std::string& config_path, const std::string& out_path) {
    sysid::ExperimentConfig config =
        sysid::load_experiment_config(config_path);
    sysid::StateSpace ss = sysid::resolve_system(config);
    json reports = json::array();
    for (sysid::Index s : config.sweep) {
        sysid::BoundInputs in;
        in.ss = ss;
        in.K = config.K;
        in.K1 = config.K1;
        in.K2 = config.K2;
        in.n = config.n;
        in.p = ss.p();
        in.m = ss.m();
        in.sigma_u = config.noise.sigma_u;
        in.sigma_w = config.noise.sigma_w;
        in.sigma_v = config.noise.sigma_v;
        in.delta = config.delta;
        in.calibration_C = config.calibration_C;
        if (config.setting == sysid::Setting::Single) {
            in.Tbar = s - config.K + 1;
        } else {
            in.N = s;
        }
        reports.push_back(sysid::bound_report_to_json(
            in, sysid::evaluate_bounds(in)));
    }
    emit(reports, out_path);
    return 0;
}

int show_system(const std::string& name) {
    sysid::StateSpace ss = sysid::builtin_system(name);
    sysid::Spectrum spectrum = sysid::eig(ss.A);
    json poles = json::array();
    for (const sysid::Complex& v : spectrum) {
        poles.push_back(json{{"re", v.real()}, {"im", v.imag()}});
    }
    const char* stability = "unstable";
    switch (ss.stability_class()) {
        case sysid::StabilityClass::Stable: stability = "stable"; break;
        case sysid::StabilityClass::Marginal: stability = "marginal"; break;
        case sysid::StabilityClass::Unstable: break;
    }
    emit(json{{"name", name},
              {"system", sysid::state_space_to_json(ss)},
              {"poles", std::move(poles)},
              {"spectral_radius", ss.spectral_radius()},
              {"stability_class", stability}},
         "");
    return 0;
}

int identify(const std::string& data_path, const std::string& setting,
             sysid::Index n, sysid::Index k1, sysid::Index k2,
             const std::string& out_path) {
    const sysid::Index K = k1 + k2 + 1;
    sysid::TrajectoryBatch batch = sysid::read_trajectory_csv(data_path);
    sysid::MarkovParams ghat;
    if (setting == "single") {
        if (batch.trajectories.size() != 1) {
            throw sysid::ConfigError(
                "identify --setting single expects exactly one trajectory");
        }
        ghat = sysid::estimate_single(batch.trajectories.front(), K);
    } else {
        if (batch.K != K) {
            throw sysid::ConfigError(
                "identify --setting multi needs trajectories of length "
                "k1 + k2 + 1");
        }
        ghat = sysid::estimate_multi(batch);
    }
    sysid::Realization r = sysid::ho_kalman(ghat, n, k1, k2);
    json poles = json::array();
    for (const sysid::Complex& v : sysid::eig(r.Ahat)) {
        poles.push_back(json{{"re", v.real()}, {"im", v.imag()}});
    }
    json out = sysid::realization_to_json(r);
    out["poles"] = std::move(poles);
    emit(out, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-sample LTI identification: least-squares Markov "
                 "estimation, Ho-Kalman realization, pole-error bounds and "
                 "the Monte Carlo benchmark harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string outdir;
    std::string out_path;
    std::string name = "stable";
    std::string setting = "multi";
    std::string data_path;
    int threads = 1;
    sysid::Index n = 4;
    sysid::Index k1 = 8;
    sysid::Index k2 = 6;

    CLI::App* experiment = app.add_subcommand("experiment", "Monte Carlo sweeps");
    CLI::App* exp_run = experiment->add_subcommand("run", "run a configured sweep");
    exp_run->add_option("--config", config_path, "config JSON file")->required();
    exp_run->add_option("--out", outdir, "output directory")->required();
    exp_run->add_option("--threads", threads, "worker threads")
        ->check(CLI::PositiveNumber);

    CLI::App* bounds_cmd = app.add_subcommand("bounds", "theoretical bounds");
    CLI::App* bounds_report =
        bounds_cmd->add_subcommand("report", "evaluate bounds per sweep value");
    bounds_report->add_option("--config", config_path, "config JSON file")
        ->required();
    bounds_report->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* system_cmd = app.add_subcommand("system", "builtin systems");
    CLI::App* system_show =
        system_cmd->add_subcommand("show", "print a builtin system");
    system_show->add_option("--name", name, "stable|marginal|unstable")
        ->required();

    CLI::App* identify_cmd =
        app.add_subcommand("identify", "run the pipeline on external data");
    identify_cmd->add_option("--data", data_path, "trajectory CSV")->required();
    identify_cmd->add_option("--setting", setting, "single|multi")
        ->required()
        ->check(CLI::IsMember({"single", "multi"}));
    identify_cmd->add_option("--n", n, "system order")->required();
    identify_cmd->add_option("--k1", k1, "Hankel row partition")->required();
    identify_cmd->add_option("--k2", k2, "Hankel column partition")->required();
    identify_cmd->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exp_run->parsed()) return run_experiment(config_path, outdir, threads);
        if (bounds_report->parsed()) return report_bounds(config_path, out_path);
        if (system_show->parsed()) return show_system(name);
        if (identify_cmd->parsed()) {
            return identify(data_path, setting, n, k1, k2, out_path);
        }
        std::cerr << app.help();
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
