#include "randcons/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "randcons/config.hpp"
#include "randcons/experiment.hpp"
#include "randcons/random.hpp"

namespace randcons::checks {

namespace {

constexpr double kTol = 1e-9;

// Random three-member intersections occasionally put three boundaries through
// one point, where Dykstra contracts slowly; the suite tests projections, not
// the default sweep budget.
const DykstraOptions kSuite{1e-13, 1000000};

Point uniform_point(Stream& s, int d, double lo, double hi) {
  Point p(d);
  for (int j = 0; j < d; ++j) p[j] = lo + (hi - lo) * s.uniform();
  return p;
}

Point unit_vector(Stream& s, int d) {
  for (;;) {
    Point v = uniform_point(s, d, -1.0, 1.0);
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0) return v / n;
  }
}

/// A set K together with a convex subset K0 that has an exact projector.
struct Instance {
  ConvexSet set;
  ConvexSet subset;
};

using Factory = std::function<Instance(Stream&, int)>;

struct Family {
  std::string name;
  Factory make;
};

std::vector<Family> families() {
  return {
      {"ball",
       [](Stream& s, int d) {
         const Point c = uniform_point(s, d, -1, 1);
         const double r = 0.5 + 1.5 * s.uniform();
         return Instance{ConvexSet::ball(c, r), ConvexSet::ball(c, r * 0.3)};
       }},
      {"box",
       [](Stream& s, int d) {
         const Point lo = uniform_point(s, d, -2, 0);
         const Point hi = lo + uniform_point(s, d, 0.2, 2.0);
         const Point mid = 0.5 * (lo + hi);
         const Point half = 0.25 * (hi - lo);
         return Instance{ConvexSet::box(lo, hi), ConvexSet::box(mid - half, mid + half)};
       }},
      {"halfspace",
       [](Stream& s, int d) {
         const Point a = unit_vector(s, d);
         const double b = -1.0 + 2.0 * s.uniform();
         // ball of radius 0.5 whose farthest point touches the hyperplane
         const Point c = (b - 0.5) * a;
         return Instance{ConvexSet::halfspace(a, b), ConvexSet::ball(c, 0.5)};
       }},
      {"affine",
       [](Stream& s, int d) {
         const int m = d / 2;
         const Point base = uniform_point(s, d, -1, 1);
         Eigen::MatrixXd q(d, 0);
         if (m > 0) {
           Eigen::MatrixXd raw(d, m);
           for (int c = 0; c < m; ++c) raw.col(c) = uniform_point(s, d, -1, 1);
           const Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
           q = qr.householderQ() * Eigen::MatrixXd::Identity(d, m);
         }
         return Instance{ConvexSet::affine(base, q), ConvexSet::ball(base, 0.0)};
       }},
      {"intersection",
       [](Stream& s, int d) {
         const Point c = uniform_point(s, d, -1, 1);
         const double r = 0.8 + s.uniform();
         const Point a = unit_vector(s, d);
         // c stays interior to every member
         std::vector<ConvexSet> members{ConvexSet::ball(c, r),
                                        ConvexSet::halfspace(a, a.dot(c) + 0.5 * r),
                                        ConvexSet::box(c - Point::Constant(d, 0.9 * r),
                                                       c + Point::Constant(d, 0.9 * r))};
         return Instance{ConvexSet::intersection(std::move(members)), ConvexSet::ball(c, 0.2 * r)};
       }},
  };
}

struct Worst {
  double value = -std::numeric_limits<double>::infinity();
  void update(double v) { value = std::max(value, v); }
};

}  // namespace

Point half_ball_projection(const Point& center, double radius, const Point& normal,
                           const Point& x) {
  const Point a = normal / normal.norm();
  const Point y = x - std::max(0.0, a.dot(x - center)) * a;
  const double r = (y - center).norm();
  if (r <= radius) return y;
  return center + (radius / r) * (y - center);
}

Point wedge_projection(const Point& a1, double b1, const Point& a2, double b2, const Point& x) {
  auto feasible = [&](const Point& p) {
    return a1.dot(p) <= b1 + 1e-12 && a2.dot(p) <= b2 + 1e-12;
  };
  if (feasible(x)) return x;
  std::vector<Point> candidates;
  candidates.push_back(x - std::max(0.0, a1.dot(x) - b1) / a1.squaredNorm() * a1);
  candidates.push_back(x - std::max(0.0, a2.dot(x) - b2) / a2.squaredNorm() * a2);
  Eigen::MatrixXd a(2, x.size());
  a.row(0) = a1.transpose();
  a.row(1) = a2.transpose();
  const Eigen::Vector2d residual(a1.dot(x) - b1, a2.dot(x) - b2);
  const Eigen::Matrix2d gram = a * a.transpose();
  candidates.push_back(x - a.transpose() * gram.ldlt().solve(residual));
  Point best;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Point& p : candidates) {
    if (!feasible(p)) continue;
    const double dist = (p - x).norm();
    if (dist < best_d) {
      best_d = dist;
      best = p;
    }
  }
  return best;
}

std::vector<CheckResult> projection_properties(std::size_t pairs, std::uint64_t seed,
                                               std::span<const int> dimensions) {
  std::vector<CheckResult> out;
  const RandomSource source(seed);
  std::uint64_t stream_index = 0;
  for (const Family& family : families()) {
    Worst expansion, variational, idempotence, subset, convexity, residual;
    for (int d : dimensions) {
      Stream s = source.substream(StreamLabel::kGraphStep, ++stream_index);
      Instance inst = family.make(s, d);
      for (std::size_t t = 0; t < pairs; ++t) {
        if (t % 100 == 99) inst = family.make(s, d);
        const Point x = uniform_point(s, d, -4, 4);
        const Point y = uniform_point(s, d, -4, 4);
        const ProjectionResult px = project(inst.set, x, kSuite);
        const ProjectionResult py = project(inst.set, y, kSuite);
        expansion.update((px.point - py.point).norm() - (x - y).norm());
        // py.point is an arbitrary member of K
        variational.update((px.point - x).dot(px.point - py.point));
        idempotence.update((project(inst.set, px.point, kSuite).point - px.point).norm());
        residual.update(membership_residual(inst.set, px.point));
        const double to_k = px.distance;
        const double sub_of_proj = distance(inst.subset, px.point, kSuite);
        const double sub_of_x = distance(inst.subset, x, kSuite);
        subset.update(sub_of_proj * sub_of_proj + to_k * to_k - sub_of_x * sub_of_x);
        const double lambda = s.uniform();
        const Point mix = lambda * x + (1.0 - lambda) * y;
        convexity.update(distance(inst.set, mix, kSuite) -
                         (lambda * px.distance + (1.0 - lambda) * py.distance));
      }
    }
    auto add = [&](std::string_view property, const Worst& w) {
      out.push_back({fmt::format("{} {}", family.name, property), w.value <= kTol,
                     fmt::format("worst excess {:.3e} over {} samples", w.value,
                                 pairs * dimensions.size())});
    };
    add("non-expansive", expansion);
    add("variational inequality", variational);
    add("idempotent", idempotence);
    add("membership of projection", residual);
    add("subset inequality", subset);
    add("distance convexity", convexity);
  }
  return out;
}

std::vector<CheckResult> dykstra_agreement(std::size_t queries, std::uint64_t seed,
                                           double tolerance) {
  const RandomSource source(seed);
  Stream s = source.substream(StreamLabel::kGraphWindow, 1);
  const int dims[] = {2, 3, 5};
  double worst_ball = 0.0;
  double worst_wedge = 0.0;
  for (std::size_t t = 0; t < queries; ++t) {
    const int d = dims[t % 3];
    const Point c = uniform_point(s, d, -1, 1);
    const double r = 0.5 + s.uniform();
    const Point a = unit_vector(s, d);
    const ConvexSet half_ball = ConvexSet::intersection(
        {ConvexSet::ball(c, r), ConvexSet::halfspace(a, a.dot(c))});
    const Point x = uniform_point(s, d, -4, 4);
    worst_ball = std::max(
        worst_ball, (project(half_ball, x).point - half_ball_projection(c, r, a, x)).norm());

    Point a1 = unit_vector(s, d);
    Point a2 = unit_vector(s, d);
    while (std::abs(a1.dot(a2)) > 0.95) a2 = unit_vector(s, d);
    const double b1 = -1 + 2 * s.uniform();
    const double b2 = -1 + 2 * s.uniform();
    const ConvexSet wedge =
        ConvexSet::intersection({ConvexSet::halfspace(a1, b1), ConvexSet::halfspace(a2, b2)});
    const Point z = uniform_point(s, d, -4, 4);
    worst_wedge =
        std::max(worst_wedge, (project(wedge, z).point - wedge_projection(a1, b1, a2, b2, z)).norm());
  }
  return {{"Dykstra vs half-ball closed form", worst_ball <= tolerance,
           fmt::format("worst error {:.3e} over {} queries", worst_ball, queries)},
          {"Dykstra vs two-halfspace wedge closed form", worst_wedge <= tolerance,
           fmt::format("worst error {:.3e} over {} queries", worst_wedge, queries)}};
}

std::vector<CheckResult> run_all(std::uint64_t seed, bool quick) {
  const int dims[] = {1, 2, 5};
  std::vector<CheckResult> out = projection_properties(quick ? 1000 : 10000, seed, dims);
  for (auto& r : dykstra_agreement(quick ? 200 : 1000, seed + 1)) out.push_back(std::move(r));

  for (double q : {0.5, 1.0}) {
    std::vector<Arc> cycle;
    for (int i = 0; i < 6; ++i) cycle.push_back({i, (i + 1) % 6});
    const GraphProcess g(6, WindowedBackbone{5, q, cycle}, 0.1, EqualWeights{});
    const RandomSource source(seed + 2);
    const std::uint64_t windows = quick ? 2000 : 10000;
    std::string bad;
    for (std::uint64_t k = 0; k < windows * 5 && bad.empty(); ++k) {
      if (auto e = check_weights(sample_snapshot(g, k, source), g.eta())) bad = *e;
    }
    const double rate = estimate_connectivity_rate(g, windows, source);
    out.push_back({fmt::format("windowed backbone q={} weights", q), bad.empty(),
                   bad.empty() ? "row-stochastic, eta-bounded" : bad});
    out.push_back({fmt::format("windowed backbone q={} connectivity rate", q),
                   std::abs(rate - q) <= 0.02, fmt::format("estimate {:.4f}", rate)});
  }

  for (const std::string& name : preset_names()) {
    ExperimentConfig c = preset(name);
    c.seeds = seed_range(1, quick ? 10 : 50);
    c.p_sweep.clear();
    const ExperimentResult r = run_experiment(c, {0, false, false});
    out.push_back({fmt::format("{} sample-path invariants", name), r.violations() == 0,
                   fmt::format("{} violations over {} seeds x {} steps", r.violations(),
                               c.seeds.size(), c.horizon)});
  }
  return out;
}

}  // namespace randcons::checks
