#include <cstdint>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hhinv/artifacts.hpp"
#include "hhinv/config.hpp"
#include "hhinv/landweber.hpp"
#include "hhinv/model.hpp"
#include "hhinv/noise.hpp"

namespace fs = std::filesystem;
using namespace hhinv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitZeroGradient = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;  // empty: use config's output_dir
};

fs::path resolve_out(const CommonOpts& opts, const ExperimentConfig& cfg) {
    return opts.out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(opts.out_dir);
}

int cmd_forward(const CommonOpts& opts) {
    const ExperimentConfig cfg = load_config(opts.config_path);
    const Trajectory traj =
        solve_forward(cfg.model, cfg.true_conductances, cfg.true_exponents, cfg.grid);
    const fs::path out = resolve_out(opts, cfg) / "trajectory.csv";
    write_trajectory_csv(out, traj);
    std::cout << "wrote " << out.string() << " (" << traj.grid.n_nodes() << " rows)\n";
    return kExitOk;
}

int cmd_perturb(const CommonOpts& opts, double epsilon, std::optional<std::uint64_t> seed) {
    const ExperimentConfig cfg = load_config(opts.config_path);
    const std::uint64_t use_seed = seed.value_or(cfg.seed);
    const Trajectory traj =
        solve_forward(cfg.model, cfg.true_conductances, cfg.true_exponents, cfg.grid);
    const Observation obs = add_noise(traj.v, cfg.grid, NoiseSpec{epsilon, use_seed});
    const fs::path out = resolve_out(opts, cfg) / "observation.csv";
    write_observation_csv(out, cfg.grid, traj.v, obs, use_seed);
    std::cout << "wrote " << out.string() << " (epsilon=" << epsilon << ", delta=" << obs.delta
              << ", seed=" << use_seed << ")\n";
    return kExitOk;
}

int cmd_invert(const CommonOpts& opts, const std::string& observation_path,
               std::optional<double> epsilon, std::optional<std::uint64_t> seed,
               std::optional<double> tau, std::optional<std::size_t> max_iter) {
    ExperimentConfig cfg = load_config(opts.config_path);
    if (tau)
        cfg.tau = *tau;
    if (!(cfg.tau > 2.0))
        throw config_error("tau: must exceed 2");
    if (max_iter)
        cfg.max_iterations = *max_iter;

    std::uint64_t use_seed = seed.value_or(cfg.seed);
    Observation obs;
    if (!observation_path.empty()) {
        obs = read_observation_csv(observation_path, cfg.grid);
        use_seed = observation_seed(observation_path);
    } else if (epsilon) {
        const Trajectory clean =
            solve_forward(cfg.model, cfg.true_conductances, cfg.true_exponents, cfg.grid);
        obs = add_noise(clean.v, cfg.grid, NoiseSpec{*epsilon, use_seed});
    } else {
        throw config_error("invert: provide --observation or --epsilon");
    }

    const StoppingRule rule{cfg.tau, obs.delta, cfg.max_iterations};
    const Conductances g = cfg.unknown == ParameterKind::conductances
                               ? Conductances::from_vec(cfg.initial_guess)
                               : cfg.true_conductances;
    const Exponents e = cfg.unknown == ParameterKind::exponents
                            ? Exponents::from_vec(cfg.initial_guess)
                            : cfg.true_exponents;

    const RunResult result =
        run_inversion(cfg.model, g, e, cfg.grid, obs, rule, cfg.unknown, cfg.truth());

    const fs::path dir = resolve_out(opts, cfg);
    const auto summary = write_run_artifact(dir, "invert", cfg, result, obs.epsilon, use_seed);
    std::cout << "k_star=" << result.k_star << " stop=" << to_string(result.stop_reason)
              << " final=(" << result.final_iterate.values[0] << ", "
              << result.final_iterate.values[1] << ", " << result.final_iterate.values[2]
              << ")\nwrote " << summary.string() << '\n';

    if (result.stop_reason == StopReason::zero_gradient) {
        std::cerr << "zero gradient at iteration " << result.k_star << '\n';
        return kExitZeroGradient;
    }
    return kExitOk;
}

int cmd_table(const CommonOpts& opts, int which, std::optional<std::uint64_t> seed,
              std::optional<std::size_t> max_iter) {
    ExperimentConfig cfg = load_config(opts.config_path);
    if (max_iter)
        cfg.max_iterations = *max_iter;
    if (cfg.epsilons.empty())
        throw config_error("epsilons: the table command needs a non-empty list");
    const ParameterKind wanted =
        which == 2 ? ParameterKind::conductances : ParameterKind::exponents;
    if (cfg.unknown != wanted)
        throw config_error("config unknown kind does not match --which (2=conductances, "
                           "3=exponents)");

    const std::uint64_t base_seed = seed.value_or(cfg.seed);
    const Trajectory clean =
        solve_forward(cfg.model, cfg.true_conductances, cfg.true_exponents, cfg.grid);

    auto run_row = [&](std::size_t idx) {
        TableRow row;
        row.epsilon = cfg.epsilons[idx];
        row.seed = derive_seed(base_seed, idx);
        try {
            const Observation obs =
                add_noise(clean.v, cfg.grid, NoiseSpec{row.epsilon, row.seed});
            const StoppingRule rule{cfg.tau, obs.delta, cfg.max_iterations};
            const Conductances g = cfg.unknown == ParameterKind::conductances
                                       ? Conductances::from_vec(cfg.initial_guess)
                                       : cfg.true_conductances;
            const Exponents e = cfg.unknown == ParameterKind::exponents
                                    ? Exponents::from_vec(cfg.initial_guess)
                                    : cfg.true_exponents;
            const RunResult res =
                run_inversion(cfg.model, g, e, cfg.grid, obs, rule, cfg.unknown, cfg.truth());
            row.k_star = res.k_star;
            row.parameters = res.final_iterate.values;
            row.residual = res.records.back().residual_norm;
            if (res.records.back().percent_error)
                row.error_percent = *res.records.back().percent_error;
            row.stop_reason = to_string(res.stop_reason);
        } catch (const divergence_error& ex) {
            row.stop_reason = "divergence";
            row.status = "divergence at iteration " + std::to_string(ex.iteration);
        }
        return row;
    };

    std::vector<std::future<TableRow>> futures;
    futures.reserve(cfg.epsilons.size());
    for (std::size_t i = 0; i < cfg.epsilons.size(); ++i)
        futures.push_back(std::async(std::launch::async, run_row, i));

    std::vector<TableRow> rows;
    rows.reserve(futures.size());
    for (auto& f : futures)
        rows.push_back(f.get());

    const fs::path out = resolve_out(opts, cfg) / ("table" + std::to_string(which) + ".csv");
    write_table_csv(out, rows);
    std::cout << "wrote " << out.string() << " (" << rows.size() << " rows)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hodgkin-Huxley forward solves and Landweber parameter recovery"};
    app.require_subcommand(1);

    CommonOpts opts;
    double epsilon = 0.0;
    bool epsilon_set = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double tau = 0.0;
    bool tau_set = false;
    std::size_t max_iter = 0;
    bool max_iter_set = false;
    std::string observation_path;
    int which = 2;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "experiment config (JSON)")->required();
        cmd->add_option("--out", opts.out_dir, "output directory (default: config output_dir)");
    };

    CLI::App* fwd = app.add_subcommand("forward", "solve the model and write t,V,m,n,h");
    add_common(fwd);

    CLI::App* pert = app.add_subcommand("perturb", "write a noisy observation of the model");
    add_common(pert);
    pert->add_option("--epsilon", epsilon, "relative noise amplitude")
        ->required()
        ->each([&](const std::string&) { epsilon_set = true; });
    pert->add_option("--seed", seed, "noise generator seed (default: config seed)")
        ->each([&](const std::string&) { seed_set = true; });

    CLI::App* inv = app.add_subcommand("invert", "recover the unknown triple from an observation");
    add_common(inv);
    inv->add_option("--observation", observation_path, "observation CSV from `perturb`");
    inv->add_option("--epsilon", epsilon, "generate the observation in-process")
        ->each([&](const std::string&) { epsilon_set = true; });
    inv->add_option("--seed", seed, "noise seed for --epsilon")
        ->each([&](const std::string&) { seed_set = true; });
    inv->add_option("--tau", tau, "discrepancy factor (default: config, 2.01)")
        ->each([&](const std::string&) { tau_set = true; });
    inv->add_option("--max-iter", max_iter, "iteration cap")
        ->each([&](const std::string&) { max_iter_set = true; });

    CLI::App* tab = app.add_subcommand("table", "one inversion per configured epsilon");
    add_common(tab);
    tab->add_option("--which", which, "2: conductances, 3: exponents")
        ->check(CLI::IsMember({2, 3}))
        ->required();
    tab->add_option("--seed", seed, "base seed for the per-row noise streams")
        ->each([&](const std::string&) { seed_set = true; });
    tab->add_option("--max-iter", max_iter, "iteration cap for every row")
        ->each([&](const std::string&) { max_iter_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        if (fwd->parsed())
            return cmd_forward(opts);
        if (pert->parsed())
            return cmd_perturb(opts, epsilon,
                               seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt);
        if (inv->parsed())
            return cmd_invert(opts, observation_path,
                              epsilon_set ? std::optional<double>(epsilon) : std::nullopt,
                              seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt,
                              tau_set ? std::optional<double>(tau) : std::nullopt,
                              max_iter_set ? std::optional<std::size_t>(max_iter) : std::nullopt);
        if (tab->parsed())
            return cmd_table(opts, which,
                             seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt,
                             max_iter_set ? std::optional<std::size_t>(max_iter) : std::nullopt);
    } catch (const config_error& ex) {
        std::cerr << "config error: " << ex.what() << '\n';
        return kExitConfig;
    } catch (const divergence_error& ex) {
        std::cerr << "divergence: " << ex.what();
        if (ex.iteration > 0)
            std::cerr << " (iteration " << ex.iteration << ")";
        std::cerr << '\n';
        return kExitDivergence;
    } catch (const zero_gradient_error& ex) {
        std::cerr << "zero gradient: " << ex.what() << '\n';
        return kExitZeroGradient;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
