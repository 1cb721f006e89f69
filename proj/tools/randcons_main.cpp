// randcons: command-line front end for the randomized projected-consensus simulator.
//
//   randcons run --config <path|preset> [--seeds N] [--horizon K] [--out DIR] [--threads T]
//   randcons preset <name> [--emit-config PATH]
//   randcons verify-graph --config <path|preset> --windows N [--seed S]
//   randcons check [--quick]
//
// Exit codes: 0 success, 2 validation, 3 invariant violation, 4 I/O.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "randcons/checks.hpp"
#include "randcons/config.hpp"
#include "randcons/experiment.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIo = 4;

void print_ensemble(const randcons::EnsembleResult& e) {
  if (e.p) {
    fmt::print("ensemble p={} ({} runs)\n", *e.p, e.stats.runs);
  } else {
    fmt::print("ensemble deterministic ({} runs)\n", e.stats.runs);
  }
  for (const auto& t : e.stats.thresholds) {
    fmt::print("  eps={:<8} hit {:6.2f}%  median first hit {:>8}  win fraction {}\n", t.epsilon,
               100.0 * t.hit_fraction,
               std::isfinite(t.median) ? fmt::format("{}", t.median) : std::string("never"),
               t.win_fraction ? fmt::format("{:.4f}", *t.win_fraction) : std::string("-"));
  }
  fmt::print("  mean final d0 {:.6e}, averaging fraction {:.4f}, violations {}\n",
             e.stats.mean_final_d0, e.stats.mean_averaging_fraction,
             e.monotonicity_violations + e.drift_violations);
}

int cmd_run(const std::string& config_arg, std::optional<std::uint64_t> seeds,
            std::optional<std::uint64_t> horizon, const std::string& out_dir, unsigned threads,
            bool no_trace) {
  randcons::ExperimentConfig config = randcons::resolve_config(config_arg);
  if (seeds) {
    const std::uint64_t base = config.seeds.empty() ? 1 : config.seeds.front();
    config.seeds = randcons::seed_range(base, *seeds);
  }
  // --horizon 0 is accepted here to dump the initial state only
  if (horizon) config.horizon = *horizon;
  if (!out_dir.empty()) config.output_dir = out_dir;
  if (no_trace) config.write_trace = false;
  randcons::RunOptions options;
  options.threads = threads;
  const randcons::ExperimentResult result = randcons::run_experiment(config, options);
  if (result.reference) {
    const auto& r = *result.reference;
    fmt::print("reference (deterministic): final d0 {:.6e}\n", r.final_d0);
  }
  for (const auto& e : result.ensembles) print_ensemble(e);
  fmt::print("summary written to {}\n", result.summary_file.string());
  return 0;
}

int cmd_preset(const std::string& name, const std::string& emit) {
  const randcons::ExperimentConfig config = randcons::preset(name);
  const std::string text = randcons::to_json(config).dump(2) + "\n";
  if (emit.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(emit, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw randcons::IoError(fmt::format("cannot write {}", emit));
  fmt::print("wrote {}\n", emit);
  return 0;
}

int cmd_verify_graph(const std::string& config_arg, std::uint64_t windows, std::uint64_t seed,
                     std::uint64_t window_length) {
  const randcons::ExperimentConfig config = randcons::resolve_config(config_arg);
  const double rate = randcons::estimate_connectivity_rate(
      config.graph, windows, randcons::RandomSource(seed), window_length);
  fmt::print("{} process, {} windows: connectivity rate {:.6f}\n", config.graph.kind(), windows,
             rate);
  return 0;
}

int cmd_check(bool quick, std::uint64_t seed) {
  const auto results = randcons::checks::run_all(seed, quick);
  int failed = 0;
  for (const auto& r : results) {
    fmt::print("[{}] {}: {}\n", r.passed ? "PASS" : "FAIL", r.name, r.detail);
    failed += !r.passed;
  }
  fmt::print("{} of {} checks passed\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized projected-consensus simulator"};
  app.require_subcommand(1);

  std::string config_arg;
  std::optional<std::uint64_t> seeds;
  std::optional<std::uint64_t> horizon;
  std::string out_dir;
  unsigned threads = 0;
  bool no_trace = false;
  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment");
  run->add_option("--config", config_arg, "Config file or preset name")->required();
  run->add_option("--seeds", seeds, "Number of seeds, counting up from the config's first seed");
  run->add_option("--horizon", horizon, "Steps per run");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  run->add_flag("--no-trace", no_trace, "Skip the per-step trace CSV");

  std::string preset_name;
  std::string emit;
  auto* pre = app.add_subcommand("preset", "Print or write a preset config");
  pre->add_option("name", preset_name, "Preset name")->required();
  pre->add_option("--emit-config", emit, "Write the config to this path");

  std::uint64_t windows = 10000;
  std::uint64_t graph_seed = 1;
  std::uint64_t window_length = 1;
  auto* vg = app.add_subcommand("verify-graph", "Estimate the joint-connectivity rate");
  vg->add_option("--config", config_arg, "Config file or preset name")->required();
  vg->add_option("--windows", windows, "Windows to sample")->required();
  vg->add_option("--seed", graph_seed, "Master seed");
  vg->add_option("--window-length", window_length,
                 "Steps per window for fixed and independent processes");

  bool quick = false;
  std::uint64_t check_seed = 2024;
  auto* chk = app.add_subcommand("check", "Run the invariant and property suite");
  chk->add_flag("--quick", quick, "Smaller sample counts");
  chk->add_option("--seed", check_seed, "Master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) return cmd_run(config_arg, seeds, horizon, out_dir, threads, no_trace);
    if (*pre) return cmd_preset(preset_name, emit);
    if (*vg) return cmd_verify_graph(config_arg, windows, graph_seed, window_length);
    if (*chk) return cmd_check(quick, check_seed);
  } catch (const randcons::InvariantViolation& e) {
    fmt::print(stderr, "invariant violation: {}\n", e.what());
    return kExitInvariant;
  } catch (const randcons::IoError& e) {
    fmt::print(stderr, "I/O error: {}\n", e.what());
    return kExitIo;
  } catch (const randcons::Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitValidation;
  }
  return 0;
}
