#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "randcons/errors.hpp"
#include "randcons/graphs.hpp"
#include "randcons/random.hpp"

using namespace randcons;

namespace {

// 0-based 3-cycle 1 -> 2 -> 3 -> 1
const std::vector<Arc> kCycle{{0, 1}, {1, 2}, {2, 0}};

std::vector<Arc> ring(int n) {
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) arcs.push_back({i, (i + 1) % n});
  return arcs;
}

}  // namespace

TEST_CASE("self-weighted fixed graph weights") {
  const DigraphSnapshot g(3, kCycle, SelfWeighted{0.5}, 0.1);
  CHECK(g.weight(1, 1) == 0.5);
  CHECK(g.weight(1, 0) == 0.5);
  CHECK(g.weight(1, 2) == 0.0);
  CHECK(g.neighbors(1).front().neighbor == 1);
  CHECK_FALSE(check_weights(g, 0.1));
}

TEST_CASE("equal weights and eta feasibility") {
  const DigraphSnapshot g(3, {{0, 2}, {1, 2}}, EqualWeights{}, 0.3);
  CHECK(g.weight(2, 2) == doctest::Approx(1.0 / 3));
  CHECK(g.weight(2, 0) == doctest::Approx(1.0 / 3));
  CHECK(g.weight(0, 0) == 1.0);
  CHECK_THROWS_AS(DigraphSnapshot(3, {{0, 2}, {1, 2}}, EqualWeights{}, 0.34), InfeasibleEta);
  CHECK_THROWS_AS(DigraphSnapshot(3, {{0, 0}}, EqualWeights{}, 0.1), InvalidGraph);
  CHECK_THROWS_AS(DigraphSnapshot(3, {{0, 3}}, EqualWeights{}, 0.1), InvalidGraph);
}

TEST_CASE("all-zero independent arcs give isolated nodes") {
  const GraphProcess g(4, IndependentArcs{Eigen::MatrixXd::Zero(4, 4)}, 0.1, EqualWeights{});
  const RandomSource src(5);
  const DigraphSnapshot s = sample_snapshot(g, 3, src);
  CHECK(s.arcs().empty());
  for (int i = 0; i < 4; ++i) {
    CHECK(s.neighbors(i).size() == 1);
    CHECK(s.weight(i, i) == 1.0);
  }
  CHECK(estimate_connectivity_rate(g, 100, src) == 0.0);
}

TEST_CASE("windowed backbone with q=1 spreads the backbone over one window") {
  const GraphProcess g(3, WindowedBackbone{4, 1.0, kCycle}, 0.1, EqualWeights{});
  const RandomSource src(9);
  std::vector<DigraphSnapshot> snaps;
  for (std::uint64_t k = 0; k < 4; ++k) snaps.push_back(sample_snapshot(g, k, src));
  const JointGraph u = join(snaps);
  CHECK(u.arcs == kCycle);
  // round-robin placement: arc t in slot t mod B
  CHECK(snaps[0].arcs() == std::vector<Arc>{kCycle[0]});
  CHECK(snaps[3].arcs().empty());
}

TEST_CASE("q=1 windows are always strongly connected") {
  const GraphProcess g(6, WindowedBackbone{5, 1.0, ring(6)}, 0.1, EqualWeights{});
  const RandomSource src(3);
  for (std::uint64_t m = 0; m < 1000; ++m) {
    REQUIRE(is_strongly_connected(joint_graph(g, 5 * m, 5 * m + 4, src)));
  }
}

TEST_CASE("union examples and algebra") {
  const DigraphSnapshot empty(3, {}, EqualWeights{}, 0.1);
  const std::vector<DigraphSnapshot> two_empty{empty, empty};
  CHECK(join(two_empty).arcs.empty());

  const DigraphSnapshot a(3, {{0, 1}}, EqualWeights{}, 0.1);
  const DigraphSnapshot b(3, {{1, 2}}, EqualWeights{}, 0.1);
  const std::vector<DigraphSnapshot> ab{a, b};
  CHECK(join(ab).arcs == std::vector<Arc>{{0, 1}, {1, 2}});

  const DigraphSnapshot cyc(3, kCycle, SelfWeighted{0.5}, 0.1);
  const std::vector<DigraphSnapshot> five(5, cyc);
  CHECK(join(five).arcs == kCycle);

  const JointGraph ja = to_joint(a), jb = to_joint(b), jc = to_joint(cyc);
  CHECK(join(ja, jb) == join(jb, ja));
  CHECK(join(join(ja, jb), jc) == join(ja, join(jb, jc)));
  CHECK(join(ja, ja) == ja);

  const DigraphSnapshot other(4, {}, EqualWeights{}, 0.1);
  const std::vector<DigraphSnapshot> mixed{a, other};
  CHECK_THROWS_AS(join(mixed), MixedSizes);
}

TEST_CASE("strong connectivity") {
  CHECK(is_strongly_connected(3, kCycle));
  const std::vector<Arc> star{{0, 1}, {0, 2}};
  CHECK_FALSE(is_strongly_connected(3, star));
  CHECK(is_strongly_connected(1, std::vector<Arc>{}));
}

TEST_CASE("bidirectional connectivity") {
  CHECK(is_connected_bidirectional(JointGraph{3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}}));
  CHECK_FALSE(is_connected_bidirectional(JointGraph{3, {{0, 1}, {1, 0}}}));
  CHECK(is_connected_bidirectional(JointGraph{1, {}}));
  CHECK_THROWS_AS(is_connected_bidirectional(JointGraph{3, {{0, 1}}}), NotBidirectional);
}

TEST_CASE("connectivity rate estimates") {
  const RandomSource src(17);
  const GraphProcess fixed(3, FixedGraph{kCycle}, 0.1, SelfWeighted{0.5});
  CHECK(estimate_connectivity_rate(fixed, 50, src) == 1.0);

  const GraphProcess w(6, WindowedBackbone{5, 0.7, ring(6)}, 0.1, EqualWeights{});
  CHECK(std::abs(estimate_connectivity_rate(w, 10000, src) - 0.7) <= 0.02);
}

TEST_CASE("window outcomes are independent of each other") {
  const GraphProcess g(6, WindowedBackbone{5, 0.5, ring(6)}, 0.1, EqualWeights{});
  const RandomSource src(23);
  // sampling order must not matter: window 7 looks the same before and after other windows
  const JointGraph before = joint_graph(g, 35, 39, src);
  for (std::uint64_t m = 0; m < 20; ++m) (void)joint_graph(g, 5 * m, 5 * m + 4, src);
  CHECK(joint_graph(g, 35, 39, src) == before);
  // a different master seed reshuffles outcomes but each window still stays all-or-nothing
  for (std::uint64_t m = 0; m < 50; ++m) {
    const auto arcs = joint_graph(g, 5 * m, 5 * m + 4, RandomSource(99)).arcs;
    CHECK((arcs.empty() || arcs.size() == 6));
  }
}

TEST_CASE("interval schedules") {
  const IntervalSchedule s({0, 3, 7});
  CHECK(s.locate(0).index == 0);
  CHECK(s.locate(5).begin == 3);
  CHECK(s.locate(5).end == 7);
  // past the listed endpoints the last length repeats
  CHECK(s.locate(7).end == 11);
  CHECK(s.locate(12).index == 3);
  CHECK_THROWS(IntervalSchedule({1, 3}));
  CHECK_THROWS(IntervalSchedule({0, 3, 3}));

  const IntervalSchedule geo = IntervalSchedule::geometric(4, 1.5, 100);
  CHECK(geo.interval(0).length() == 4);
  CHECK(geo.interval(1).length() == 6);
  CHECK(geo.interval(2).length() == 9);
  CHECK(geo.endpoints().back() >= 100);
}

TEST_CASE("sic schedule is bidirectional and connected per successful interval") {
  const std::vector<Arc> path{{0, 1}, {1, 2}, {2, 3}};
  const GraphProcess g(4, SicSchedule{IntervalSchedule({0, 2, 6}), 1.0, path}, 0.1,
                       EqualWeights{});
  CHECK_FALSE(g.directed());
  const RandomSource src(1);
  // interval [2, 6): four slots, one edge each
  const JointGraph j = joint_graph(g, 2, 5, src);
  CHECK(j.arcs.size() == 6);
  CHECK(is_connected_bidirectional(j));
  // a 2-step interval still carries all edges, two per snapshot
  CHECK(joint_graph(g, 0, 1, src).arcs.size() == 6);
  CHECK(estimate_connectivity_rate(g, 200, src) == 1.0);

  const GraphProcess half(4, SicSchedule{IntervalSchedule({0, 4}), 0.5, path}, 0.1,
                          EqualWeights{});
  CHECK(std::abs(estimate_connectivity_rate(half, 10000, src) - 0.5) <= 0.02);
}

TEST_CASE("process validation") {
  CHECK_THROWS_AS(GraphProcess(3, WindowedBackbone{4, 0.5, {{0, 1}, {1, 2}}}, 0.1, EqualWeights{}),
                  InvalidGraph);
  CHECK_THROWS_AS(GraphProcess(3, FixedGraph{kCycle}, 0.5, EqualWeights{}), InfeasibleEta);
  CHECK_THROWS_AS(GraphProcess(3, FixedGraph{kCycle}, 0.1, SelfWeighted{0.95}), InfeasibleEta);
  CHECK_THROWS_AS(GraphProcess(3, WindowedBackbone{0, 0.5, kCycle}, 0.1, EqualWeights{}),
                  InvalidGraph);
}

TEST_CASE("every sampled snapshot has admissible weights") {
  const GraphProcess g(6, WindowedBackbone{5, 0.7, ring(6)}, 0.1, EqualWeights{});
  const RandomSource src(4);
  for (std::uint64_t k = 0; k < 5000; ++k) {
    const auto err = check_weights(sample_snapshot(g, k, src), g.eta());
    REQUIRE_FALSE(err);
  }
}
