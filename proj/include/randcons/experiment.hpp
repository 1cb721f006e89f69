#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "randcons/config.hpp"
#include "randcons/metrics.hpp"

namespace randcons {

struct RunOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Write trace CSVs and summary.json under config.output_dir.
  bool write_files = true;
  /// Throw InvariantViolation after writing outputs if any run breached a
  /// sample-path invariant.
  bool fail_on_violation = true;
};

struct EnsembleResult {
  /// Averaging probability of this ensemble; nullopt for a deterministic protocol.
  std::optional<double> p;
  std::vector<RunSummary> runs;
  EnsembleStats stats;
  std::uint64_t monotonicity_violations = 0;
  std::uint64_t drift_violations = 0;
  std::vector<InvariantMonitor::Breach> breaches;
  std::filesystem::path trace_file;
};

struct ExperimentResult {
  std::optional<RunSummary> reference;
  /// Invariant breaches of the deterministic reference run.
  std::uint64_t reference_violations = 0;
  std::vector<InvariantMonitor::Breach> reference_breaches;
  std::vector<EnsembleResult> ensembles;
  std::filesystem::path summary_file;

  std::uint64_t violations() const;
};

/// Runs protocol::run once per seed on a worker pool. Trace rows always come
/// out ordered by (seed position, k, agent), so the CSV bytes do not depend on
/// the thread count. Throws IoError, NonConvergence and, per options,
/// InvariantViolation.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Header line "seed,k,agent,x0,...,x{d-1},decision,dist_own,d0,spread_max".
std::string trace_header(Eigen::Index dimension);

/// Appends one CSV row per agent for the given step.
void append_trace_rows(std::string& out, std::uint64_t seed, const NetworkState& state,
                       const StepMetrics& metrics);

nlohmann::json to_json(const RunSummary& summary);
nlohmann::json to_json(const EnsembleStats& stats);

}  // namespace randcons
