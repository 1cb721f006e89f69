#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "randcons/errors.hpp"
#include "randcons/random.hpp"

namespace randcons {

/// Arc from `from` to `to`: node `to` receives the state of node `from`.
/// Node ids are 0-based in code; configuration files use 1-based ids.
struct Arc {
  int from = 0;
  int to = 0;
  auto operator<=>(const Arc&) const = default;
};

struct EqualWeights {};

/// Self weight `self`, the remaining 1 - self split equally among other neighbors.
struct SelfWeighted {
  double self = 0.5;
};

using WeightRule = std::variant<EqualWeights, SelfWeighted>;

struct NeighborWeight {
  int neighbor = 0;
  double weight = 0.0;
};

/// One step's communication graph with its averaging weights.
///
/// The neighbor set of node i is {i} plus every j with an arc (j, i). The
/// first entry of neighbors(i) is always i itself.
class DigraphSnapshot {
 public:
  /// Throws InvalidGraph on self-loops or out-of-range ids, InfeasibleEta when
  /// the weight rule would put some weight below eta.
  DigraphSnapshot(int n, std::vector<Arc> arcs, const WeightRule& rule, double eta);

  int size() const noexcept { return n_; }
  /// Sorted, duplicate-free.
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  std::span<const NeighborWeight> neighbors(int i) const { return weights_.at(i); }
  /// a_ij; 0 when j is not a neighbor of i.
  double weight(int receiver, int neighbor) const;

 private:
  int n_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<NeighborWeight>> weights_;
};

/// Union of snapshot arc sets over a step interval.
struct JointGraph {
  int n = 0;
  std::vector<Arc> arcs;  // sorted, duplicate-free
  bool operator==(const JointGraph&) const = default;
};

struct FixedGraph {
  std::vector<Arc> arcs;
};

/// Arc (i, j) present at each step independently with probability(i, j).
struct IndependentArcs {
  Eigen::MatrixXd probability;
};

/// Windows [mB, (m+1)B - 1]; one Bernoulli(q) per window decides whether the
/// backbone arcs appear. Backbone arc t lands in snapshot mB + (t mod B).
struct WindowedBackbone {
  int window = 1;
  double q = 1.0;
  std::vector<Arc> backbone;
};

struct StepInterval {
  std::uint64_t index = 0;
  std::uint64_t begin = 0;
  std::uint64_t end = 0;  // exclusive
  std::uint64_t length() const noexcept { return end - begin; }
};

/// Deterministic interval sequence 0 = k*_0 < k*_1 < ... . Past the last
/// listed endpoint, intervals repeat the final listed length.
class IntervalSchedule {
 public:
  struct Geometric {
    double first_length = 1.0;
    double growth = 1.0;
    std::uint64_t cover_until = 1;
  };

  explicit IntervalSchedule(std::vector<std::uint64_t> endpoints);

  /// Lengths ceil(first_length * growth^tau), listed until the endpoints cover `cover_until`.
  static IntervalSchedule geometric(double first_length, double growth, std::uint64_t cover_until);

  StepInterval locate(std::uint64_t k) const;
  StepInterval interval(std::uint64_t index) const;
  const std::vector<std::uint64_t>& endpoints() const noexcept { return endpoints_; }
  /// Set when built by geometric(); lets configs round-trip the compact form.
  const std::optional<Geometric>& rule() const noexcept { return rule_; }

 private:
  std::vector<std::uint64_t> endpoints_;
  std::optional<Geometric> rule_;
};

/// Bidirectional process: per interval one Bernoulli(q) decides whether the
/// undirected backbone edges appear (both directions), edge t in snapshot
/// begin + (t mod length).
struct SicSchedule {
  IntervalSchedule intervals{{0, 1}};
  double q = 1.0;
  std::vector<Arc> backbone;  // undirected edges, stored once each
};

/// Generator of the snapshot sequence G_0, G_1, ...
class GraphProcess {
 public:
  using Variant = std::variant<FixedGraph, IndependentArcs, WindowedBackbone, SicSchedule>;

  /// Validates the process and the eta bound for the largest reachable
  /// neighbor set; throws InvalidGraph or InfeasibleEta.
  GraphProcess(int n, Variant process, double eta, WeightRule rule);

  int size() const noexcept { return n_; }
  double eta() const noexcept { return eta_; }
  const WeightRule& weight_rule() const noexcept { return rule_; }
  const Variant& variant() const noexcept { return process_; }
  /// False for the bidirectional SicSchedule.
  bool directed() const noexcept;
  std::string_view kind() const noexcept;

 private:
  int n_;
  Variant process_;
  double eta_;
  WeightRule rule_;
};

/// Snapshot G_k. Pure in (process, k, source).
DigraphSnapshot sample_snapshot(const GraphProcess& process, std::uint64_t k,
                                const RandomSource& source);

/// Joint graph of the given snapshots. Throws MixedSizes.
JointGraph join(std::span<const DigraphSnapshot> snapshots);
JointGraph join(const JointGraph& a, const JointGraph& b);
JointGraph to_joint(const DigraphSnapshot& snapshot);

/// Joint graph G([first, last]) of a process, both ends inclusive.
JointGraph joint_graph(const GraphProcess& process, std::uint64_t first, std::uint64_t last,
                       const RandomSource& source);

bool is_strongly_connected(int n, std::span<const Arc> arcs);
bool is_strongly_connected(const JointGraph& g);
bool is_strongly_connected(const DigraphSnapshot& g);

/// Undirected connectivity of a symmetric arc set; throws NotBidirectional otherwise.
bool is_connected_bidirectional(const JointGraph& g);

/// Fraction of sampled windows whose joint graph is connected in the sense
/// matching the process: strongly connected for directed processes,
/// undirected-connected for SicSchedule. Windows are the process's own
/// windows/intervals; Fixed and IndependentArcs use `window_length` steps
/// (default 1).
double estimate_connectivity_rate(const GraphProcess& process, std::uint64_t windows,
                                  const RandomSource& source, std::uint64_t window_length = 1);

/// Row-stochasticity (sum 1 +- tol) and eta lower bound over every N_i.
/// Returns a description of the first failure, or nullopt.
std::optional<std::string> check_weights(const DigraphSnapshot& g, double eta,
                                         double tol = 1e-12);

}  // namespace randcons
