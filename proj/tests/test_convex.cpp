#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "randcons/checks.hpp"
#include "randcons/convex.hpp"
#include "randcons/errors.hpp"

using namespace randcons;

namespace {

Point p2(double a, double b) { return (Point(2) << a, b).finished(); }

std::vector<ConvexSet> three_disks() {
  return {ConvexSet::ball(p2(-1, 0), 1.0), ConvexSet::ball(p2(1, 0), 1.0),
          ConvexSet::ball(p2(0, -1), 1.0)};
}

// Brute-force nearest feasible point: coarse grid, then a 1e-4 grid around the best cell.
Point grid_nearest(const std::function<bool(double, double)>& feasible, const Point& x,
                   double lo, double hi) {
  Point best;
  double best_d = INFINITY;
  auto scan = [&](double x0, double x1, double y0, double y1, double h) {
    for (double a = x0; a <= x1 + 1e-15; a += h) {
      for (double b = y0; b <= y1 + 1e-15; b += h) {
        if (!feasible(a, b)) continue;
        const double d = std::hypot(a - x[0], b - x[1]);
        if (d < best_d) {
          best_d = d;
          best = p2(a, b);
        }
      }
    }
  };
  scan(lo, hi, lo, hi, 1e-2);
  const Point c = best;
  scan(c[0] - 2e-2, c[0] + 2e-2, c[1] - 2e-2, c[1] + 2e-2, 1e-4);
  return best;
}

}  // namespace

TEST_CASE("ball projection") {
  const auto b = ConvexSet::ball(p2(0, 0), 1.0);
  const auto r = project(b, p2(2, 0));
  CHECK((r.point - p2(1, 0)).norm() < 1e-15);
  CHECK(r.distance == doctest::Approx(1.0));
  const auto inside = project(b, p2(0.3, 0.2));
  CHECK((inside.point - p2(0.3, 0.2)).norm() == 0.0);
  CHECK(inside.distance == 0.0);
}

TEST_CASE("intersection of the three disks is the origin") {
  const auto x0 = ConvexSet::intersection(three_disks());
  const auto r = project(x0, p2(-2, 2));
  CHECK(r.converged);
  CHECK(r.point.norm() < 1e-6);
  CHECK(r.distance == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-6));
  CHECK(contains(x0, p2(0, 0), 1e-6));
}

TEST_CASE("ball and halfspace intersection matches a grid search") {
  const Point x = p2(2, 0);
  const Point oracle = grid_nearest(
      [](double a, double b) { return a * a + b * b <= 1.0 && a <= 0.5; }, x, -1.0, 1.0);
  CHECK((oracle - p2(0.5, 0)).norm() < 2e-4);

  const auto k = ConvexSet::intersection(
      {ConvexSet::ball(p2(0, 0), 1.0), ConvexSet::halfspace(p2(1, 0), 0.5)});
  const auto r = project(k, x);
  CHECK((r.point - p2(0.5, 0)).norm() < 1e-9);
  CHECK(r.distance == doctest::Approx(1.5));
  CHECK((r.point - oracle).norm() < 2e-4);
}

TEST_CASE("distances") {
  CHECK(distance(ConvexSet::halfspace(p2(0, 1), 0), p2(5, 3)) == doctest::Approx(3.0));
  CHECK(distance(ConvexSet::box(p2(0, 0), p2(1, 1)), p2(2, 2)) == doctest::Approx(std::sqrt(2.0)));
  const auto disk1 = ConvexSet::ball(p2(-1, 0), 1.0);
  CHECK(distance(disk1, p2(-2, 2)) == doctest::Approx(std::sqrt(5.0) - 1.0));
  const Point expected = p2(-1, 0) + p2(-1, 2) / std::sqrt(5.0);
  CHECK((project(disk1, p2(-2, 2)).point - expected).norm() < 1e-15);
}

TEST_CASE("contains") {
  const auto b = ConvexSet::ball(p2(0, 0), 1.0);
  CHECK(contains(b, p2(1, 0), 1e-9));
  CHECK_FALSE(contains(b, p2(1 + 1e-6, 0), 1e-9));
}

TEST_CASE("halfspace normal is normalized") {
  const auto h = ConvexSet::halfspace(p2(0, 2), 2.0);  // x2 <= 1
  CHECK(distance(h, p2(0, 3)) == doctest::Approx(2.0));
  const auto& hs = std::get<Halfspace>(h.variant());
  CHECK(hs.normal.norm() == doctest::Approx(1.0));
  CHECK(hs.offset == doctest::Approx(1.0));
}

TEST_CASE("affine projection") {
  Eigen::MatrixXd dirs(3, 1);
  dirs << 1, 0, 0;
  const Point base = (Point(3) << 0, 1, 2).finished();
  const auto line = ConvexSet::affine(base, dirs);
  const auto r = project(line, (Point(3) << 5, 4, -2).finished());
  CHECK((r.point - (Point(3) << 5, 1, 2).finished()).norm() < 1e-15);
  CHECK(r.distance == doctest::Approx(5.0));
}

TEST_CASE("invalid sets and dimension errors") {
  CHECK_THROWS_AS(ConvexSet::ball(p2(0, 0), -1.0), InvalidSet);
  CHECK_THROWS_AS(ConvexSet::box(p2(1, 0), p2(0, 1)), InvalidSet);
  CHECK_THROWS_AS(ConvexSet::halfspace(p2(0, 0), 1.0), InvalidSet);
  Eigen::MatrixXd skew(2, 1);
  skew << 1, 1;
  CHECK_THROWS_AS(ConvexSet::affine(p2(0, 0), skew), InvalidSet);
  CHECK_THROWS_AS(ConvexSet::intersection({}), InvalidSet);
  CHECK_THROWS_AS(project(ConvexSet::ball(p2(0, 0), 1.0), Point::Zero(3)), DimensionMismatch);
}

TEST_CASE("empty intersection reports non-convergence") {
  const auto k = ConvexSet::intersection(
      {ConvexSet::halfspace(p2(1, 0), 0.0), ConvexSet::halfspace(p2(-1, 0), -1.0)});
  CHECK_THROWS_AS(project(k, p2(3, 0), {1e-10, 200}), NonConvergence);
}

TEST_CASE("closed-form oracles agree with direct projections") {
  // half-ball with the cut through the center
  const Point c = p2(0, 0);
  CHECK((checks::half_ball_projection(c, 1.0, p2(1, 0), p2(2, 0)) - p2(0, 0)).norm() < 1e-15);
  CHECK((checks::half_ball_projection(c, 1.0, p2(1, 0), p2(-3, 0)) - p2(-1, 0)).norm() < 1e-15);
  // quadrant x <= 0, y <= 0
  CHECK((checks::wedge_projection(p2(1, 0), 0, p2(0, 1), 0, p2(2, 3)) - p2(0, 0)).norm() < 1e-15);
  CHECK((checks::wedge_projection(p2(1, 0), 0, p2(0, 1), 0, p2(2, -3)) - p2(0, -3)).norm() < 1e-15);
}

TEST_CASE("projection property suite") {
  const int dims[] = {1, 2, 5};
  for (const auto& r : checks::projection_properties(2000, 11, dims)) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
  for (const auto& r : checks::dykstra_agreement(300, 12)) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
}
