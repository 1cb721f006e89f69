#include "randcons/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace randcons {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void normalize_arcs(std::vector<Arc>& arcs) {
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
}

void validate_arcs(int n, std::span<const Arc> arcs, std::string_view what) {
  for (const Arc& a : arcs) {
    if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n) {
      throw InvalidGraph(fmt::format("{}: arc ({}, {}) outside nodes 1..{}", what, a.from + 1,
                                     a.to + 1, n));
    }
    if (a.from == a.to) {
      throw InvalidGraph(fmt::format("{}: self-loop at node {}", what, a.from + 1));
    }
  }
}

/// Weights for a neighbor set of `size` members (self included).
std::pair<double, double> rule_weights(const WeightRule& rule, std::size_t size) {
  if (size == 1) return {1.0, 0.0};
  return std::visit(
      Overloaded{[&](const EqualWeights&) {
                   const double w = 1.0 / static_cast<double>(size);
                   return std::pair{w, w};
                 },
                 [&](const SelfWeighted& s) {
                   return std::pair{s.self, (1.0 - s.self) / static_cast<double>(size - 1)};
                 }},
      rule);
}

double min_rule_weight(const WeightRule& rule, std::size_t size) {
  const auto [self, other] = rule_weights(rule, size);
  return size == 1 ? self : std::min(self, other);
}

std::vector<std::vector<int>> adjacency(int n, std::span<const Arc> arcs, bool reversed) {
  std::vector<std::vector<int>> adj(n);
  for (const Arc& a : arcs) {
    if (reversed) {
      adj[a.to].push_back(a.from);
    } else {
      adj[a.from].push_back(a.to);
    }
  }
  return adj;
}

bool reaches_all(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

bool undirected_connected(int n, std::span<const Arc> edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const Arc& e : edges) {
    const int a = find(e.from);
    const int b = find(e.to);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components <= 1;
}

std::vector<int> in_degrees(int n, std::span<const Arc> arcs) {
  std::vector<int> deg(n, 0);
  for (const Arc& a : arcs) ++deg[a.to];
  return deg;
}

int max_in_degree(const GraphProcess::Variant& process, int n) {
  auto max_of = [](const std::vector<int>& v) {
    return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
  };
  return std::visit(
      Overloaded{
          [&](const FixedGraph& g) { return max_of(in_degrees(n, g.arcs)); },
          [&](const IndependentArcs& g) {
            int worst = 0;
            for (int j = 0; j < n; ++j) {
              int deg = 0;
              for (int i = 0; i < n; ++i) deg += (i != j && g.probability(i, j) > 0.0);
              worst = std::max(worst, deg);
            }
            return worst;
          },
          [&](const WindowedBackbone& g) {
            // arcs sharing a slot t mod B arrive in the same snapshot
            int worst = 0;
            for (int slot = 0; slot < g.window; ++slot) {
              std::vector<Arc> group;
              for (std::size_t t = slot; t < g.backbone.size(); t += g.window) {
                group.push_back(g.backbone[t]);
              }
              worst = std::max(worst, max_of(in_degrees(n, group)));
            }
            return worst;
          },
          [&](const SicSchedule& g) {
            std::vector<int> deg(n, 0);
            for (const Arc& e : g.backbone) {
              ++deg[e.from];
              ++deg[e.to];
            }
            return max_of(deg);
          }},
      process);
}

void require_probability(double q, std::string_view what) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw InvalidGraph(fmt::format("{} success probability must lie in (0, 1], got {}", what, q));
  }
}

}  // namespace

DigraphSnapshot::DigraphSnapshot(int n, std::vector<Arc> arcs, const WeightRule& rule, double eta)
    : n_(n), arcs_(std::move(arcs)), weights_(n) {
  if (n < 1) throw InvalidGraph("snapshot needs at least one node");
  validate_arcs(n, arcs_, "snapshot");
  normalize_arcs(arcs_);
  for (int i = 0; i < n; ++i) weights_[i].push_back({i, 0.0});
  for (const Arc& a : arcs_) weights_[a.to].push_back({a.from, 0.0});
  for (int i = 0; i < n; ++i) {
    auto& row = weights_[i];
    const auto [self, other] = rule_weights(rule, row.size());
    row[0].weight = self;
    for (std::size_t t = 1; t < row.size(); ++t) row[t].weight = other;
    const double lowest = min_rule_weight(rule, row.size());
    if (lowest < eta) {
      throw InfeasibleEta(fmt::format("node {} has {} neighbors; weight {} is below eta = {}",
                                      i + 1, row.size(), lowest, eta));
    }
  }
}

double DigraphSnapshot::weight(int receiver, int neighbor) const {
  for (const NeighborWeight& nw : weights_.at(receiver)) {
    if (nw.neighbor == neighbor) return nw.weight;
  }
  return 0.0;
}

IntervalSchedule::IntervalSchedule(std::vector<std::uint64_t> endpoints)
    : endpoints_(std::move(endpoints)) {
  if (endpoints_.size() < 2 || endpoints_.front() != 0) {
    throw InvalidGraph("interval schedule needs endpoints 0 = k*_0 < k*_1 < ...");
  }
  for (std::size_t t = 1; t < endpoints_.size(); ++t) {
    if (endpoints_[t] <= endpoints_[t - 1]) {
      throw InvalidGraph(fmt::format("interval endpoints must increase strictly (position {})", t));
    }
  }
}

IntervalSchedule IntervalSchedule::geometric(double first_length, double growth,
                                             std::uint64_t cover_until) {
  if (!(first_length >= 1.0) || !(growth >= 1.0)) {
    throw InvalidGraph("geometric schedule needs first_length >= 1 and growth >= 1");
  }
  std::vector<std::uint64_t> ends{0};
  double length = first_length;
  while (ends.back() < std::max<std::uint64_t>(cover_until, 1)) {
    ends.push_back(ends.back() + static_cast<std::uint64_t>(std::ceil(length - 1e-9)));
    length *= growth;
  }
  IntervalSchedule out(std::move(ends));
  out.rule_ = Geometric{first_length, growth, cover_until};
  return out;
}

StepInterval IntervalSchedule::locate(std::uint64_t k) const {
  const std::uint64_t last = endpoints_.back();
  if (k < last) {
    const auto it = std::upper_bound(endpoints_.begin(), endpoints_.end(), k);
    const auto index = static_cast<std::uint64_t>(it - endpoints_.begin()) - 1;
    return {index, endpoints_[index], endpoints_[index + 1]};
  }
  const std::uint64_t tail = last - endpoints_[endpoints_.size() - 2];
  const std::uint64_t extra = (k - last) / tail;
  const std::uint64_t begin = last + extra * tail;
  return {endpoints_.size() - 1 + extra, begin, begin + tail};
}

StepInterval IntervalSchedule::interval(std::uint64_t index) const {
  if (index + 1 < endpoints_.size()) return {index, endpoints_[index], endpoints_[index + 1]};
  const std::uint64_t last = endpoints_.back();
  const std::uint64_t tail = last - endpoints_[endpoints_.size() - 2];
  const std::uint64_t begin = last + (index - (endpoints_.size() - 1)) * tail;
  return {index, begin, begin + tail};
}

GraphProcess::GraphProcess(int n, Variant process, double eta, WeightRule rule)
    : n_(n), process_(std::move(process)), eta_(eta), rule_(rule) {
  if (n < 1) throw InvalidGraph("graph process needs at least one node");
  if (!(eta > 0.0) || eta > 1.0 / n + 1e-15) {
    throw InfeasibleEta(fmt::format("eta must lie in (0, 1/n] = (0, {}], got {}", 1.0 / n, eta));
  }
  if (const auto* s = std::get_if<SelfWeighted>(&rule_)) {
    if (s->self < eta || s->self > 1.0 - eta) {
      throw InfeasibleEta(fmt::format("self weight {} outside [eta, 1 - eta] = [{}, {}]", s->self,
                                      eta, 1.0 - eta));
    }
  }
  std::visit(Overloaded{[&](FixedGraph& g) {
                          validate_arcs(n, g.arcs, "fixed graph");
                          normalize_arcs(g.arcs);
                        },
                        [&](IndependentArcs& g) {
                          if (g.probability.rows() != n || g.probability.cols() != n) {
                            throw InvalidGraph(fmt::format(
                                "arc probability matrix must be {}x{}", n, n));
                          }
                          for (int i = 0; i < n; ++i) {
                            for (int j = 0; j < n; ++j) {
                              const double p = g.probability(i, j);
                              if (!(p >= 0.0 && p <= 1.0)) {
                                throw InvalidGraph("arc probabilities must lie in [0, 1]");
                              }
                              if (i == j && p != 0.0) {
                                throw InvalidGraph("self-loop probabilities must be 0");
                              }
                            }
                          }
                        },
                        [&](WindowedBackbone& g) {
                          if (g.window < 1) throw InvalidGraph("window length B must be >= 1");
                          require_probability(g.q, "window");
                          validate_arcs(n, g.backbone, "backbone");
                          if (!is_strongly_connected(n, g.backbone)) {
                            throw InvalidGraph("windowed backbone must be strongly connected");
                          }
                        },
                        [&](SicSchedule& g) {
                          require_probability(g.q, "interval");
                          validate_arcs(n, g.backbone, "backbone");
                          if (!undirected_connected(n, g.backbone)) {
                            throw InvalidGraph("bidirectional backbone must be connected");
                          }
                        }},
             process_);
  const auto largest = static_cast<std::size_t>(max_in_degree(process_, n)) + 1;
  if (min_rule_weight(rule_, largest) < eta) {
    throw InfeasibleEta(fmt::format("a node may have {} neighbors, giving weight {} < eta = {}",
                                    largest, min_rule_weight(rule_, largest), eta));
  }
}

bool GraphProcess::directed() const noexcept {
  return !std::holds_alternative<SicSchedule>(process_);
}

std::string_view GraphProcess::kind() const noexcept {
  return std::visit(
      Overloaded{[](const FixedGraph&) { return std::string_view("fixed"); },
                 [](const IndependentArcs&) { return std::string_view("independent"); },
                 [](const WindowedBackbone&) { return std::string_view("windowed"); },
                 [](const SicSchedule&) { return std::string_view("sic"); }},
      process_);
}

DigraphSnapshot sample_snapshot(const GraphProcess& process, std::uint64_t k,
                                const RandomSource& source) {
  const int n = process.size();
  std::vector<Arc> arcs = std::visit(
      Overloaded{
          [&](const FixedGraph& g) { return g.arcs; },
          [&](const IndependentArcs& g) {
            std::vector<Arc> out;
            Stream stream = source.substream(StreamLabel::kGraphStep, k);
            for (int i = 0; i < n; ++i) {
              for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (stream.uniform() < g.probability(i, j)) out.push_back({i, j});
              }
            }
            return out;
          },
          [&](const WindowedBackbone& g) {
            std::vector<Arc> out;
            const auto window = static_cast<std::uint64_t>(g.window);
            if (!source.substream(StreamLabel::kGraphWindow, k / window).bernoulli(g.q)) return out;
            const std::uint64_t slot = k % window;
            for (std::size_t t = slot; t < g.backbone.size(); t += window) {
              out.push_back(g.backbone[t]);
            }
            return out;
          },
          [&](const SicSchedule& g) {
            std::vector<Arc> out;
            const StepInterval iv = g.intervals.locate(k);
            if (!source.substream(StreamLabel::kGraphInterval, iv.index).bernoulli(g.q)) return out;
            const std::uint64_t slot = k - iv.begin;
            for (std::size_t t = slot; t < g.backbone.size(); t += iv.length()) {
              out.push_back(g.backbone[t]);
              out.push_back({g.backbone[t].to, g.backbone[t].from});
            }
            return out;
          }},
      process.variant());
  return DigraphSnapshot(n, std::move(arcs), process.weight_rule(), process.eta());
}

JointGraph to_joint(const DigraphSnapshot& snapshot) { return {snapshot.size(), snapshot.arcs()}; }

JointGraph join(const JointGraph& a, const JointGraph& b) {
  if (a.n != b.n) throw MixedSizes(fmt::format("cannot join graphs on {} and {} nodes", a.n, b.n));
  JointGraph out{a.n, {}};
  std::set_union(a.arcs.begin(), a.arcs.end(), b.arcs.begin(), b.arcs.end(),
                 std::back_inserter(out.arcs));
  return out;
}

JointGraph join(std::span<const DigraphSnapshot> snapshots) {
  if (snapshots.empty()) return {};
  JointGraph out{snapshots.front().size(), {}};
  for (const DigraphSnapshot& s : snapshots) out = join(out, to_joint(s));
  return out;
}

JointGraph joint_graph(const GraphProcess& process, std::uint64_t first, std::uint64_t last,
                       const RandomSource& source) {
  JointGraph out{process.size(), {}};
  for (std::uint64_t k = first; k <= last; ++k) {
    out = join(out, to_joint(sample_snapshot(process, k, source)));
  }
  return out;
}

bool is_strongly_connected(int n, std::span<const Arc> arcs) {
  if (n <= 1) return true;
  return reaches_all(adjacency(n, arcs, false)) && reaches_all(adjacency(n, arcs, true));
}

bool is_strongly_connected(const JointGraph& g) { return is_strongly_connected(g.n, g.arcs); }

bool is_strongly_connected(const DigraphSnapshot& g) {
  return is_strongly_connected(g.size(), g.arcs());
}

bool is_connected_bidirectional(const JointGraph& g) {
  for (const Arc& a : g.arcs) {
    if (!std::binary_search(g.arcs.begin(), g.arcs.end(), Arc{a.to, a.from})) {
      throw NotBidirectional(
          fmt::format("arc ({}, {}) has no reverse arc", a.from + 1, a.to + 1));
    }
  }
  return undirected_connected(g.n, g.arcs);
}

double estimate_connectivity_rate(const GraphProcess& process, std::uint64_t windows,
                                  const RandomSource& source, std::uint64_t window_length) {
  if (windows == 0) throw InvalidGraph("need at least one window");
  window_length = std::max<std::uint64_t>(window_length, 1);
  std::uint64_t connected = 0;
  for (std::uint64_t m = 0; m < windows; ++m) {
    std::uint64_t first = m * window_length;
    std::uint64_t last = first + window_length - 1;
    if (const auto* w = std::get_if<WindowedBackbone>(&process.variant())) {
      first = m * static_cast<std::uint64_t>(w->window);
      last = first + static_cast<std::uint64_t>(w->window) - 1;
    } else if (const auto* s = std::get_if<SicSchedule>(&process.variant())) {
      const StepInterval iv = s->intervals.interval(m);
      first = iv.begin;
      last = iv.end - 1;
    }
    const JointGraph g = joint_graph(process, first, last, source);
    const bool ok = process.directed() ? is_strongly_connected(g) : is_connected_bidirectional(g);
    connected += ok;
  }
  return static_cast<double>(connected) / static_cast<double>(windows);
}

std::optional<std::string> check_weights(const DigraphSnapshot& g, double eta, double tol) {
  for (int i = 0; i < g.size(); ++i) {
    const auto row = g.neighbors(i);
    if (row.empty() || row.front().neighbor != i) {
      return fmt::format("node {} is missing from its own neighbor set", i + 1);
    }
    double sum = 0.0;
    for (const NeighborWeight& nw : row) {
      if (nw.weight < eta) {
        return fmt::format("a_{},{} = {} is below eta = {}", i + 1, nw.neighbor + 1, nw.weight,
                           eta);
      }
      sum += nw.weight;
    }
    if (std::abs(sum - 1.0) > tol) {
      return fmt::format("weights of node {} sum to {}", i + 1, sum);
    }
  }
  return std::nullopt;
}

}  // namespace randcons
