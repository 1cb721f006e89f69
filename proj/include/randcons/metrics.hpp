#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "randcons/protocol.hpp"

namespace randcons {

/// Convergence functionals of one network state.
struct StepMetrics {
  std::uint64_t k = 0;
  /// max_i |x_i(k)|_{X_0}
  double d0 = 0.0;
  /// |x_i(k)|_{X_i} per agent
  std::vector<double> own;
  /// max_i x_i[j] - min_i x_i[j] per coordinate j
  std::vector<double> spread;
  double spread_max = 0.0;
  /// Decisions that produced this state; empty for the initial state.
  std::vector<Decision> decisions;
};

/// Throws NonConvergence if X_0 is an intersection Dykstra cannot resolve.
StepMetrics observe(const NetworkState& state, const ProtocolConfig& config,
                    std::span<const Decision> decisions);

/// Sample-path invariant checks, fed one state at a time.
///
/// Tracks  max_i |x_i|_{X_0}  (must never increase) and, for every anchor a,
/// z_a = max_i |x_i|_{X_a}, which may grow by at most max_i |x_i|_{X_i} per step.
class InvariantMonitor {
 public:
  struct Breach {
    std::string kind;  // "monotonicity" or "anchor-drift"
    std::uint64_t step = 0;
    int agent = 0;  // anchor for drift breaches, worst agent for monotonicity
    double magnitude = 0.0;
    std::uint64_t seed = 0;  // filled in by the experiment runner
  };

  explicit InvariantMonitor(const ProtocolConfig& config, double tolerance = 1e-9);

  void check(const NetworkState& state, const StepMetrics& metrics);

  std::uint64_t monotonicity_violations() const noexcept { return monotonicity_; }
  std::uint64_t drift_violations() const noexcept { return drift_; }
  std::uint64_t steps_checked() const noexcept { return checked_; }
  /// First few breaches, for diagnostics.
  const std::vector<Breach>& breaches() const noexcept { return breaches_; }

 private:
  void record(Breach b);

  const ProtocolConfig* config_;
  double tolerance_;
  bool has_previous_ = false;
  double previous_d0_ = 0.0;
  double previous_own_max_ = 0.0;
  std::vector<double> previous_anchor_;
  std::uint64_t monotonicity_ = 0;
  std::uint64_t drift_ = 0;
  std::uint64_t checked_ = 0;
  std::vector<Breach> breaches_;
};

struct RunSummary {
  std::uint64_t seed = 0;
  std::vector<double> epsilons;
  /// Smallest k with d0 <= epsilons[e]; nullopt when never within the horizon.
  std::vector<std::optional<std::uint64_t>> first_hit;
  double final_d0 = 0.0;
  double final_spread_max = 0.0;
  std::uint64_t monotonicity_violations = 0;
  double averaging_fraction = 0.0;
  /// Slope of log d0 against k over the last 20% of steps; nullopt when
  /// fewer than two positive samples remain.
  std::optional<double> tail_slope;
  std::vector<double> d0_trajectory;

  std::optional<std::uint64_t> first_hit_at(double epsilon) const;
};

/// Throws EmptyTrace, or ValidationError unless epsilons are positive and descending.
RunSummary summarize(std::span<const StepMetrics> trace, std::span<const double> epsilons,
                     std::uint64_t seed = 0);

/// Per-threshold ensemble statistics. A run that never reaches the threshold
/// counts as first_hit = +infinity.
struct FirstHitStats {
  double epsilon = 0.0;
  std::size_t hits = 0;
  double hit_fraction = 0.0;
  /// +infinity as soon as one run misses.
  double mean = 0.0;
  /// Misses counted as horizon + 1.
  double censored_mean = 0.0;
  double median = 0.0;
  /// Fraction of runs whose first_hit is strictly below the reference's.
  std::optional<double> win_fraction;
};

struct EnsembleStats {
  std::size_t runs = 0;
  std::vector<FirstHitStats> thresholds;
  /// Pointwise mean of d0 over runs; length of the shortest trajectory.
  std::vector<double> mean_d0;
  double mean_final_d0 = 0.0;
  double mean_averaging_fraction = 0.0;
  std::uint64_t monotonicity_violations = 0;

  const FirstHitStats& at(double epsilon) const;
};

/// Throws EmptyTrace on an empty list. `reference` enables win fractions.
EnsembleStats aggregate(std::span<const RunSummary> summaries,
                        const RunSummary* reference = nullptr);

/// observe() at every step of protocol run(), returning the full trace.
std::vector<StepMetrics> traced_run(const ProtocolConfig& config, const GraphProcess& graph,
                                    const NetworkState& initial, std::uint64_t horizon,
                                    const RandomSource& source,
                                    InvariantMonitor* monitor = nullptr);

}  // namespace randcons
