// Command-line front end: Monte-Carlo sweeps and decomposition dumps.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bbsd/config.hpp"
#include "bbsd/error.hpp"
#include "bbsd/experiments.hpp"
#include "bbsd/pevd.hpp"
#include "bbsd/polymat.hpp"
#include "bbsd/signalgen.hpp"

namespace {

struct SweepArgs {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<long long> trials;
};

void add_overrides(CLI::App* cmd, SweepArgs& args) {
  cmd->add_option("--out", args.out_path, "CSV output path")->required();
  cmd->add_option("--seed", args.seed, "Override the config seed");
  cmd->add_option("--trials", args.trials, "Override trials per hypothesis and cell")->check(CLI::PositiveNumber);
}

int sweep(bbsd::ScenarioConfig config, const SweepArgs& args) {
  if (args.seed) config.seed = *args.seed;
  if (args.trials) config.num_trials = *args.trials;
  config.validate();
  const auto result = bbsd::run_experiment(config, args.out_path);
  std::size_t singular = 0;
  for (const auto& r : result.records) singular += r.status == bbsd::CellStatus::ill_conditioned ? 1 : 0;
  std::cerr << "wrote " << result.records.size() << " records to " << args.out_path << " (" << singular
            << " ill-conditioned)\n";
  return 0;
}

void dump(const std::filesystem::path& path, const bbsd::LaurentMatrix& a) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  bbsd::write_text(out, a);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

int decompose(const std::string& config_path, const std::filesystem::path& dir) {
  const bbsd::ScenarioConfig config = config_path.empty() ? bbsd::ScenarioConfig{} : bbsd::load_config(config_path);
  bbsd::Rng rng(config.seed);
  const bbsd::SourceModel model = bbsd::build_mixing_system(config, rng);
  const auto [R, R1] = bbsd::ground_truth_csd(model, config.sigma_v2);

  bbsd::PevdOptions opts;
  opts.max_iter = config.pevd_max_iter;
  opts.residual_tol = config.pevd_residual_tol;
  opts.trunc_eps = config.pevd_trunc_eps;
  const bbsd::AnalyticEvdResult evd = bbsd::pevd(R, opts);
  const bbsd::SubspacePartition part = bbsd::partition(evd, config.L);

  std::filesystem::create_directories(dir);
  dump(dir / "R.txt", R);
  dump(dir / "R1.txt", R1);
  dump(dir / "Q.txt", evd.Q);
  dump(dir / "Lambda.txt", evd.Lambda);
  dump(dir / "Q_perp.txt", bbsd::truncate(part.Q_perp, config.projection_trunc_eps));
  std::cerr << "pevd: " << evd.iterations << " iterations, residual " << evd.residual
            << (evd.status == bbsd::PevdStatus::converged ? " (converged)" : " (iteration limit)") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broadband subspace detection of weak transient sources"};
  app.require_subcommand(1);

  SweepArgs run_args;
  auto* run = app.add_subcommand("run", "Sweep all methods over T for a JSON scenario");
  run->add_option("--config", run_args.config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  add_overrides(run, run_args);

  SweepArgs fig3_args;
  auto* fig3 = app.add_subcommand("figure3", "Preset: J = 10, transient 10 dB below");
  add_overrides(fig3, fig3_args);

  SweepArgs fig2_args;
  auto* fig2 = app.add_subcommand("figure2", "Preset: J = 20, transient 20 dB below");
  add_overrides(fig2, fig2_args);

  std::string dec_config;
  std::string dec_dir;
  auto* dec = app.add_subcommand("decompose", "Dump R, R1, Q, Lambda and Q_perp as text polynomial matrices");
  dec->add_option("--config", dec_config, "Scenario JSON (defaults if omitted)")->check(CLI::ExistingFile);
  dec->add_option("--out-dir", dec_dir, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return sweep(bbsd::load_config(run_args.config_path), run_args);
    if (*fig3) return sweep(bbsd::figure3_config(), fig3_args);
    if (*fig2) return sweep(bbsd::figure2_config(), fig2_args);
    if (*dec) return decompose(dec_config, dec_dir);
  } catch (const bbsd::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
