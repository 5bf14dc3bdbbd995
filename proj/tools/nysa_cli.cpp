// Command-line driver: `sweep` runs landmark-selection error sweeps,
// `scores` dumps per-point diagnostics and the greedy trace, `check`
// evaluates the bound battery. Flags mirror the config fields; a flat
// key=value config file can seed any of them, with flags winning.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "nysa/nysa.hpp"

namespace {

void add_common_options(CLI::App& cmd, nysa::ExperimentConfig& cfg) {
  cmd.add_option("--data", cfg.data_path, "CSV dataset path (one point per row)");
  cmd.add_option("--format", cfg.data_format,
                 "dataset source: csv | blobs | ring | moons")
      ->check(CLI::IsMember({"csv", "blobs", "ring", "moons"}));
  cmd.add_option("--drop-column", cfg.drop_column,
                 "0-based column to drop from the CSV (e.g. labels)");
  cmd.add_option("--synth-n", cfg.synth_n, "synthetic point count");
  cmd.add_option("--synth-d", cfg.synth_d, "synthetic dimension (blobs)");
  cmd.add_option("--synth-blobs", cfg.synth_blob_count, "blob count");
  cmd.add_option("--synth-spread", cfg.synth_spread, "blob spread");
  cmd.add_option("--synth-seed", cfg.synth_seed, "synthetic generator seed");
  cmd.add_option("--kernel", cfg.kernel, "kernel family: gaussian | laplace")
      ->check(CLI::IsMember({"gaussian", "laplace"}));
  cmd.add_option("--bandwidth", cfg.bandwidth, "kernel bandwidth sigma");
  cmd.add_option("--gamma", cfg.gammas, "regularization values (list)");
  cmd.add_option("--epsilon", cfg.epsilon, "adaptive sampler regularizer");
  cmd.add_option("--c", cfg.c, "adaptive sampler oversampling factor");
  cmd.add_option("--t", cfg.t, "adaptive sampler accuracy parameter");
  cmd.add_option("--n-features", cfg.n_features,
                 "random feature count for approx-ras");
  cmd.add_option("--mu", cfg.mu, "stabilizer for measured approximations");
  cmd.add_option("--exact-cap", cfg.exact_cap,
                 "max dataset size for dense exact paths");
  cmd.add_option("--seeds", cfg.seeds, "run seeds (list)");
  cmd.add_option("--out", cfg.out_prefix, "output path prefix");
  cmd.add_option("--workers", cfg.workers, "worker threads for sweep cells")
      ->envname("NYSA_WORKERS");
}

int dispatch(const std::string& mode, nysa::ExperimentConfig& cfg) {
  cfg.validate();
  if (mode == "sweep") {
    const nysa::SweepResult res = nysa::run_sweep(cfg);
    nysa::write_sweep(cfg, res);
    std::cout << "wrote " << cfg.out_prefix << ".results.csv ("
              << res.rows.size() << " rows) and " << cfg.out_prefix
              << ".summary.json\n";
    if (cfg.emit_timings)
      std::cout << "wrote " << cfg.out_prefix << ".timings.csv\n";
    return 0;
  }
  if (mode == "scores") {
    const nysa::ScoresResult res = nysa::dump_scores(cfg);
    nysa::write_scores(cfg, res);
    std::cout << "wrote " << cfg.out_prefix << ".scores.csv and "
              << cfg.out_prefix << ".trace.csv\n";
    return 0;
  }
  // check: report-only by contract — the exit code reflects whether the
  // battery ran, not whether every bound held.
  const nysa::Json report = nysa::check_bounds(cfg);
  nysa::write_check(cfg, report);
  for (const auto& entry : report)
    std::cout << (entry.at("pass").get<bool>() ? "pass  " : "FAIL  ")
              << entry.at("check").get<std::string>() << "\n";
  std::cout << "wrote " << cfg.out_prefix << ".checks.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  nysa::ExperimentConfig cfg;
  CLI::App app{"landmark selection and low-rank kernel approximation"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value config file; put options for a subcommand under "
                 "its section, e.g. [sweep]");
  app.allow_config_extras(CLI::config_extras_mode::error);

  CLI::App* sweep =
      app.add_subcommand("sweep", "error sweep over methods, gamma, k, seeds");
  add_common_options(*sweep, cfg);
  sweep->add_option("--methods", cfg.methods,
                    "selection methods: das ras uniform rls approx-ras");
  sweep->add_option("--k", cfg.k_list, "landmark counts (list)");
  sweep->add_flag("--k-from-ras", cfg.k_from_ras,
                  "derive k per cell from the adaptive sampler's output size");
  sweep->add_option("--metrics", cfg.metrics,
                    "error metrics: opnorm maxnorm frob-subsets");
  sweep->add_option("--subset-size", cfg.subset_size,
                    "points per frob-subsets draw");
  sweep->add_option("--num-subsets", cfg.num_subsets,
                    "number of frob-subsets draws");
  sweep->add_flag("--timings", cfg.emit_timings,
                  "also write a (non-reproducible) timings CSV");

  CLI::App* scores = app.add_subcommand(
      "scores", "per-point score dump plus the greedy selection trace");
  add_common_options(*scores, cfg);
  scores->add_option("--k", cfg.k_list, "greedy trace length");
  scores->add_flag("--k-from-ras", cfg.k_from_ras,
                   "trace length from the adaptive sampler's output size");

  CLI::App* check =
      app.add_subcommand("check", "run the bound and identity check battery");
  add_common_options(*check, cfg);
  check->add_option("--check-n", cfg.check_n, "check instance size");
  check->add_option("--check-epsilon", cfg.check_epsilon,
                    "epsilon for the guarantee checks");
  check->add_option("--check-delta", cfg.check_delta,
                    "failure probability for the Monte-Carlo check");
  check->add_option("--check-seeds", cfg.check_seeds,
                    "Monte-Carlo repetition count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), cfg);
  } catch (const nysa::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nysa::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const nysa::numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
