#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "randcons/convex.hpp"
#include "randcons/graphs.hpp"
#include "randcons/random.hpp"

namespace randcons {

enum class Decision : std::uint8_t { kAverage, kProject };

enum class Phase : std::uint8_t { kAverageFirst, kProjectFirst };

/// Every agent averages with probability p and projects with probability 1 - p.
struct Randomized {
  double p = 0.5;
};

/// Whole network alternates averaging and projection, starting per `phase`.
struct DeterministicAlternating {
  Phase phase = Phase::kAverageFirst;
};

using ProtocolMode = std::variant<Randomized, DeterministicAlternating>;

/// The agents' private sets X_i plus X_0, which only the metrics read.
class ProtocolConfig {
 public:
  /// Throws ValidationError on p outside (0, 1), empty or mixed-dimension sets.
  ProtocolConfig(ProtocolMode mode, std::vector<ConvexSet> sets, ConvexSet intersection);

  int size() const noexcept { return static_cast<int>(sets_.size()); }
  Eigen::Index dimension() const noexcept { return intersection_.dimension(); }
  const ProtocolMode& mode() const noexcept { return mode_; }
  bool randomized() const noexcept { return std::holds_alternative<Randomized>(mode_); }
  const std::vector<ConvexSet>& sets() const noexcept { return sets_; }
  const ConvexSet& own_set(int agent) const { return sets_.at(agent); }
  const ConvexSet& intersection() const noexcept { return intersection_; }

  /// Same sets, different mode.
  ProtocolConfig with_mode(ProtocolMode mode) const;

 private:
  ProtocolMode mode_;
  std::vector<ConvexSet> sets_;
  ConvexSet intersection_;
};

struct NetworkState {
  std::uint64_t step = 0;
  std::vector<Point> states;
};

/// Independent Bernoulli(p) per agent, drawn in ascending agent order from
/// the (kDecision, k) substream. Throws ModeError for the deterministic mode.
std::vector<Decision> decide(const ProtocolConfig& config, std::uint64_t k,
                             const RandomSource& source);

/// All Average on even k and all Project on odd k (swapped for kProjectFirst).
std::vector<Decision> deterministic_schedule(std::uint64_t k, Phase phase, int agents);

/// decide() or deterministic_schedule() according to the configured mode.
std::vector<Decision> decisions_for(const ProtocolConfig& config, std::uint64_t k,
                                    const RandomSource& source);

/// One synchronous update: every agent reads the pre-step state.
NetworkState step(const NetworkState& state, const DigraphSnapshot& snapshot,
                  std::span<const Decision> decisions, const ProtocolConfig& config);

/// Called with the initial state (no decisions) and after every step with
/// the decisions that produced the new state.
using StepObserver = std::function<void(const NetworkState&, std::span<const Decision>)>;

/// Iterates sample_snapshot -> decisions -> step for k = 0 .. horizon - 1.
NetworkState run(const ProtocolConfig& config, const GraphProcess& graph, NetworkState initial,
                 std::uint64_t horizon, const RandomSource& source,
                 const StepObserver& observer = {});

}  // namespace randcons
