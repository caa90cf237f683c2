#include "sysid/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "sysid/errors.hpp"
#include "sysid/ho_kalman.hpp"
#include "sysid/io.hpp"
#include "sysid/markov_ls.hpp"
#include "sysid/numerics.hpp"
#include "sysid/spectral_metrics.hpp"

namespace sysid {

void validate_config(const ExperimentConfig& config) {
    if (config.K1 + config.K2 + 1 != config.K) {
        throw BadPartition("config: K must equal K1 + K2 + 1");
    }
    if (config.K1 < config.n || config.K2 < config.n) {
        throw BadPartition("config: K1 and K2 must be at least n");
    }
    if (config.trials < 1) throw ConfigError("config: trials must be >= 1");
    if (config.sweep.empty()) throw ConfigError("config: sweep must be nonempty");
    for (std::size_t i = 1; i < config.sweep.size(); ++i) {
        if (config.sweep[i] <= config.sweep[i - 1]) {
            throw ConfigError("config: sweep must be strictly increasing");
        }
    }
    if (!(config.delta > 0.0 && config.delta < 1.0)) {
        throw BadDelta("config: delta must lie in (0, 1)");
    }
    if (config.setting == Setting::Single) {
        if (config.sweep.front() < config.K) {
            throw ConfigError("config: single-setting sweep values are T >= K");
        }
    }
}

StateSpace builtin_system(const std::string& name) {
    SpringDamperParams sd;
    sd.m1 = 1.0;
    sd.m2 = 1.0;
    sd.k2 = 0.7;
    sd.k3 = 0.6;
    sd.Ts = 0.1;
    if (name == "stable") {
        sd.k1 = 0.5;
        sd.c1 = 5.0;
        sd.c2 = 5.0;
    } else if (name == "marginal") {
        sd.k1 = 0.5;
        sd.c1 = 60.0;
        sd.c2 = 5.0;
    } else if (name == "unstable") {
        sd.k1 = -0.7;
        sd.c1 = 5.0;
        sd.c2 = 5.0;
    } else {
        throw UnknownName("builtin_system: '" + name +
                          "' is not stable/marginal/unstable");
    }
    ContinuousModel cm = spring_damper_continuous(sd);
    return zoh_discretize(cm.Ac, cm.Bc, cm.Cc, sd.Ts);
}

StateSpace resolve_system(const ExperimentConfig& config) {
    if (config.system_name != "custom") {
        return builtin_system(config.system_name);
    }
    if (config.spring_params) {
        ContinuousModel cm = spring_damper_continuous(*config.spring_params);
        return zoh_discretize(cm.Ac, cm.Bc, cm.Cc, config.spring_params->Ts);
    }
    if (config.custom_system) return *config.custom_system;
    throw ConfigError("config: custom system without matrices");
}

TrialRecord run_trial(const StateSpace& ss, const ExperimentConfig& config,
                      Index sample_size, Index trial_index) {
    TrialRecord rec;
    rec.setting = config.setting;
    rec.sample_size = sample_size;
    rec.trial_index = trial_index;
    rec.seed = derive_seed(
        derive_seed(config.base_seed, static_cast<std::uint64_t>(sample_size)),
        static_cast<std::uint64_t>(trial_index));

    MarkovParams g_true = markov_matrix(ss, config.K);

    if (config.setting == Setting::Multi) {
        HankelSet hankel =
            hankel_from_markov(g_true, config.K1, config.K2, config.n);
        const double sigma_n = svd(hankel.Hminus).S(config.n - 1);
        if (sigma_n > 0.0) {
            Realization exact = ho_kalman(g_true, config.n, config.K1, config.K2);
            ExtendedMatrices ext =
                extended_matrices(ss, config.K1, config.K2, config.K);
            BoundInputs in;
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
            in.N = sample_size;
            in.calibration_C = config.calibration_C;
            const double c1_val = c1(config.K, in.p, in.m, config.delta);
            const double c2_val = c2(config.K, in.p, config.n, config.delta,
                                     spectral_norm(ext.F));
            const double dprime = delta_multi(in, spectral_norm(hankel.Hplus),
                                              sigma_n, c1_val, c2_val);
            rec.bound_value =
                pole_bound(dprime, spectral_norm(exact.Ahat), config.n);
            rec.bound_valid =
                sample_size >=
                min_trajectories(in.p, config.n, in.m, config.K, config.delta);
        }
    }

    NoiseSpec noise = config.noise;
    try {
        MarkovParams ghat;
        if (config.setting == Setting::Single) {
            SingleTrajectory traj =
                simulate_single(ss, noise, sample_size, rec.seed);
            ghat = estimate_single(traj, config.K);
        } else {
            TrajectoryBatch batch =
                simulate_batch(ss, noise, config.K, sample_size, rec.seed);
            ghat = estimate_multi(batch);
        }
        rec.markov_err = spectral_norm(ghat.G - g_true.G);
        Realization r = ho_kalman(ghat, config.n, config.K1, config.K2);
        rec.sigma_n_est = r.sigma(config.n - 1);
        rec.near_singular = r.near_singular;
        rec.poles = eig(r.Ahat);
        rec.d_hausdorff = hausdorff(eig(ss.A), rec.poles);
    } catch (const RankDeficient&) {
        // Failed trial: recorded with d_hausdorff absent, sweep continues.
    }
    return rec;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return std::nan("");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

SweepResult run_sweep(const ExperimentConfig& config, int threads) {
    validate_config(config);
    const StateSpace ss = resolve_system(config);

    const std::size_t per_size = static_cast<std::size_t>(config.trials);
    const std::size_t total = config.sweep.size() * per_size;
    SweepResult result;
    result.records.resize(total);
    result.true_poles = eig(ss.A);

    auto execute = [&](std::size_t task) {
        const Index sample_size = config.sweep[task / per_size];
        const Index trial = static_cast<Index>(task % per_size);
        result.records[task] = run_trial(ss, config, sample_size, trial);
    };

    if (threads <= 1) {
        for (std::size_t task = 0; task < total; ++task) execute(task);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t task = next.fetch_add(1);
                    if (task >= total) return;
                    try {
                        execute(task);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (std::thread& worker : pool) worker.join();
        if (failure) std::rethrow_exception(failure);
    }

    for (std::size_t s = 0; s < config.sweep.size(); ++s) {
        ErrorCurve curve;
        curve.sample_size = config.sweep[s];
        std::vector<double> errors;
        for (std::size_t t = 0; t < per_size; ++t) {
            const TrialRecord& rec = result.records[s * per_size + t];
            if (rec.d_hausdorff) {
                errors.push_back(*rec.d_hausdorff);
            } else {
                ++curve.failures;
            }
        }
        curve.median = quantile(errors, 0.5);
        curve.q10 = quantile(errors, 0.1);
        curve.q90 = quantile(errors, 0.9);
        curve.bound_overlay = result.records[s * per_size].bound_value;
        result.curves.push_back(std::move(curve));
    }
    return result;
}

void export_results(const SweepResult& result, const ExperimentConfig& config,
                    const std::filesystem::path& outdir) {
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw IoFailure("cannot create output directory: " + outdir.string());

    auto open = [&](const char* name) {
        std::ofstream out(outdir / name, std::ios::binary);
        if (!out) throw IoFailure(std::string("cannot write ") + name);
        return out;
    };
    {
        std::ofstream out = open("trials.csv");
        write_trials_csv(out, result.records);
    }
    {
        std::ofstream out = open("curves.csv");
        write_curves_csv(out, result.curves);
    }
    {
        std::ofstream out = open("poles.csv");
        write_poles_csv(out, result);
    }
    {
        std::ofstream out = open("config.json");
        out << experiment_config_to_json(config).dump(2) << "\n";
    }
}

}  // namespace sysid
