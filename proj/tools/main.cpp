#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dltv/dltv.hpp"

namespace {

int cmd_run(const std::string& config_path, const CLI::App* sub, const std::string& out_override,
            int runs_override, std::int64_t horizon_override, std::uint64_t seed_override,
            int jobs_override) {
    dltv::ExperimentConfig config = dltv::load_config(config_path);
    if (sub->count("--out") > 0) config.output_path = out_override;
    if (sub->count("--runs") > 0) config.runs = runs_override;
    if (sub->count("--horizon") > 0) config.horizon = horizon_override;
    if (sub->count("--seed") > 0) config.base_seed = seed_override;
    if (sub->count("--jobs") > 0) config.jobs = jobs_override;
    config.validate();

    const dltv::ExperimentOutput output = dltv::run_experiment(config);
    dltv::write_csv(config.output_path, output.records);
    std::cout << "experiment: " << dltv::to_string(config.experiment) << "\n"
              << "records:    " << output.records.size() << " -> " << config.output_path << "\n"
              << dltv::format_summary(output.summary);
    return 0;
}

int cmd_summarize(const std::string& csv_path, bool as_json, const CLI::App* sub,
                  const std::string& curves_path) {
    const auto records = dltv::read_csv(csv_path);
    const auto summary = dltv::summarize(records);
    if (records.empty()) std::cerr << "warning: " << csv_path << " holds no records\n";

    if (as_json) {
        nlohmann::json j;
        j["agents"] = nlohmann::json::array();
        for (const auto& s : summary)
            j["agents"].push_back({{"agent", s.agent},
                                   {"runs", s.runs},
                                   {"final_cum_mean", s.mean_final_cum},
                                   {"final_cum_stderr", s.stderr_final_cum},
                                   {"step_reward_mean", s.mean_step_reward},
                                   {"step_reward_stderr", s.stderr_step_reward}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << dltv::format_summary(summary);
    }

    if (sub->count("--out") > 0) {
        const auto curves = dltv::aggregate_curves(records);
        std::ofstream out(curves_path, std::ios::binary);
        if (!out) throw std::runtime_error("summarize: cannot open " + curves_path);
        out << "agent,step,mean_reward,mean_cum_reward,n_runs\n";
        char buf[160];
        for (const auto& c : curves) {
            std::snprintf(buf, sizeof(buf), "%s,%lld,%.6f,%.6f,%d\n", c.agent.c_str(),
                          static_cast<long long>(c.step), c.mean_reward, c.mean_cum_reward,
                          c.n_runs);
            out << buf;
        }
    }
    return 0;
}

/// Online quantile estimation against a degenerate and a stochastic target,
/// logging quantile trajectories with their closed-form reference values.
int cmd_demo_figure1(const std::string& out_path, std::int64_t steps, int seeds) {
    constexpr int kQuantiles = 32;
    constexpr double kTargetValue = 3.0;
    constexpr double kA = 200.0, kB = 100.0;  // Robbins-Monro step a/(b+t)

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("demo: cannot open " + out_path);
    out << "target,seed,step,quantile_index,tau_hat,theta,oracle_value\n";

    const std::pair<const char*, dltv::ArmSpec> targets[] = {
        {"degenerate", dltv::make_figure1_target(dltv::FigureTargetKind::degenerate, kTargetValue)},
        {"stochastic", dltv::make_figure1_target(dltv::FigureTargetKind::stochastic, kTargetValue)}};
    const std::int64_t stride = std::max<std::int64_t>(1, steps / 100);

    char buf[200];
    for (const auto& [name, spec] : targets) {
        double worst_final_error = 0.0;
        for (int seed = 0; seed < seeds; ++seed) {
            dltv::Rng rng(dltv::derive_seed(static_cast<std::uint64_t>(seed) + 1,
                                            name[0] == 'd' ? 11 : 22));
            dltv::OnlineEstimatorState est(dltv::QuantileDistribution::spread(kQuantiles, 3.0),
                                           kA / (kB + 1.0));
            for (std::int64_t t = 1; t <= steps; ++t) {
                est.step_size = kA / (kB + static_cast<double>(t));
                dltv::online_update(est, dltv::sample_reward(spec, rng));
                if (t % stride != 0 && t != steps) continue;
                for (int i = 0; i < kQuantiles; ++i) {
                    const double tau = est.levels[i];
                    const double oracle_value =
                        spec.kind == dltv::ArmKind::degenerate
                            ? kTargetValue
                            : dltv::oracle::normal_inverse_cdf(tau, spec.mu, spec.sigma);
                    std::snprintf(buf, sizeof(buf), "%s,%d,%lld,%d,%.6f,%.6f,%.6f\n", name, seed,
                                  static_cast<long long>(t), i, tau, est.dist[i], oracle_value);
                    out << buf;
                }
            }
            double err = 0.0;
            std::vector<double> sorted = est.dist.values();
            std::sort(sorted.begin(), sorted.end());
            for (int i = 0; i < kQuantiles; ++i) {
                const double oracle_value =
                    spec.kind == dltv::ArmKind::degenerate
                        ? kTargetValue
                        : dltv::oracle::normal_inverse_cdf(est.levels[i], spec.mu, spec.sigma);
                err = std::max(err, std::abs(sorted[static_cast<std::size_t>(i)] - oracle_value));
            }
            worst_final_error = std::max(worst_final_error, err);
        }
        std::printf("%-11s target: %d seeds x %lld steps, worst final max|theta - oracle| = %.4f\n",
                    name, seeds, static_cast<long long>(steps), worst_final_error);
    }
    std::cout << "trajectories -> " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantile-distribution exploration laboratory"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment config and write records CSV");
    std::string config_path, run_out;
    int runs_override = 0, jobs_override = 0;
    std::int64_t horizon_override = 0;
    std::uint64_t seed_override = 0;
    run->add_option("config", config_path, "experiment config file")->required();
    run->add_option("--out", run_out, "override output CSV path");
    run->add_option("--runs", runs_override, "override number of runs");
    run->add_option("--horizon", horizon_override, "override horizon");
    run->add_option("--seed", seed_override, "override base seed");
    run->add_option("--jobs", jobs_override, "parallel runs (default 1)");

    auto* summarize = app.add_subcommand("summarize", "aggregate a records CSV");
    std::string csv_path, curves_out;
    bool as_json = false;
    summarize->add_option("csv", csv_path, "records CSV produced by run")->required();
    summarize->add_flag("--json", as_json, "emit the summary as JSON");
    summarize->add_option("--out", curves_out, "write per-step mean curves CSV here");

    auto* demo = app.add_subcommand("demo", "built-in demonstrations");
    std::string demo_what;
    std::string demo_out = "figure1.csv";
    std::int64_t demo_steps = 20000;
    int demo_seeds = 5;
    demo->add_option("what", demo_what, "demo name (figure1)")->required();
    demo->add_option("--out", demo_out, "trajectory CSV path");
    demo->add_option("--steps", demo_steps, "samples per seed");
    demo->add_option("--seeds", demo_seeds, "number of seeds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed())
            return cmd_run(config_path, run, run_out, runs_override, horizon_override,
                           seed_override, jobs_override);
        if (summarize->parsed()) return cmd_summarize(csv_path, as_json, summarize, curves_out);
        if (demo->parsed()) {
            if (demo_what != "figure1") {
                std::cerr << "unknown demo '" << demo_what << "' (available: figure1)\n";
                return 2;
            }
            if (demo_steps < 1 || demo_seeds < 1) {
                std::cerr << "demo: --steps and --seeds must be >= 1\n";
                return 2;
            }
            return cmd_demo_figure1(demo_out, demo_steps, demo_seeds);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
