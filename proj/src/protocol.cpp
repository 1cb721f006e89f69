#include "randcons/protocol.hpp"

#include <fmt/format.h>

namespace randcons {

ProtocolConfig::ProtocolConfig(ProtocolMode mode, std::vector<ConvexSet> sets,
                               ConvexSet intersection)
    : mode_(mode), sets_(std::move(sets)), intersection_(std::move(intersection)) {
  if (const auto* r = std::get_if<Randomized>(&mode_)) {
    if (!(r->p > 0.0 && r->p < 1.0)) {
      throw ValidationError(fmt::format("p in (0,1) required, got {}", r->p));
    }
  }
  if (sets_.empty()) throw ValidationError("protocol needs at least one agent set");
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    if (sets_[i].dimension() != intersection_.dimension()) {
      throw ValidationError(fmt::format("dimension mismatch: set of agent {} has dimension {}, "
                                        "intersection has {}",
                                        i + 1, sets_[i].dimension(), intersection_.dimension()));
    }
  }
}

ProtocolConfig ProtocolConfig::with_mode(ProtocolMode mode) const {
  return ProtocolConfig(mode, sets_, intersection_);
}

std::vector<Decision> decide(const ProtocolConfig& config, std::uint64_t k,
                             const RandomSource& source) {
  const auto* r = std::get_if<Randomized>(&config.mode());
  if (r == nullptr) throw ModeError("decide() is only defined for the randomized protocol");
  Stream stream = source.substream(StreamLabel::kDecision, k);
  std::vector<Decision> out(config.size());
  for (auto& d : out) d = stream.bernoulli(r->p) ? Decision::kAverage : Decision::kProject;
  return out;
}

std::vector<Decision> deterministic_schedule(std::uint64_t k, Phase phase, int agents) {
  const bool even = k % 2 == 0;
  const bool average = (phase == Phase::kAverageFirst) == even;
  return std::vector<Decision>(agents, average ? Decision::kAverage : Decision::kProject);
}

std::vector<Decision> decisions_for(const ProtocolConfig& config, std::uint64_t k,
                                    const RandomSource& source) {
  if (const auto* d = std::get_if<DeterministicAlternating>(&config.mode())) {
    return deterministic_schedule(k, d->phase, config.size());
  }
  return decide(config, k, source);
}

NetworkState step(const NetworkState& state, const DigraphSnapshot& snapshot,
                  std::span<const Decision> decisions, const ProtocolConfig& config) {
  const int n = config.size();
  if (static_cast<int>(state.states.size()) != n || snapshot.size() != n ||
      static_cast<int>(decisions.size()) != n) {
    throw DimensionMismatch(fmt::format("step: {} agents, {} states, {}-node snapshot, {} decisions",
                                        n, state.states.size(), snapshot.size(), decisions.size()));
  }
  for (const Point& x : state.states) {
    if (x.size() != config.dimension()) {
      throw DimensionMismatch(fmt::format("state of dimension {} in a {}-dimensional problem",
                                          x.size(), config.dimension()));
    }
  }
  NetworkState next{state.step + 1, std::vector<Point>(n)};
  for (int i = 0; i < n; ++i) {
    if (decisions[i] == Decision::kAverage) {
      Point acc = Point::Zero(config.dimension());
      for (const NeighborWeight& nw : snapshot.neighbors(i)) {
        acc += nw.weight * state.states[nw.neighbor];
      }
      next.states[i] = std::move(acc);
    } else {
      next.states[i] = project(config.own_set(i), state.states[i]).point;
    }
  }
  return next;
}

NetworkState run(const ProtocolConfig& config, const GraphProcess& graph, NetworkState initial,
                 std::uint64_t horizon, const RandomSource& source, const StepObserver& observer) {
  if (graph.size() != config.size()) {
    throw DimensionMismatch(fmt::format("graph has {} nodes, protocol has {} agents", graph.size(),
                                        config.size()));
  }
  NetworkState state = std::move(initial);
  if (observer) observer(state, {});
  for (std::uint64_t t = 0; t < horizon; ++t) {
    const std::uint64_t k = state.step;
    const DigraphSnapshot snapshot = sample_snapshot(graph, k, source);
    const std::vector<Decision> decisions = decisions_for(config, k, source);
    state = step(state, snapshot, decisions, config);
    if (observer) observer(state, decisions);
  }
  return state;
}

}  // namespace randcons
