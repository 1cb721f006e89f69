#include "randcons/convex.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace randcons {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(const Point& p, std::string_view what) {
  if (p.size() == 0) throw InvalidSet(fmt::format("{}: zero-dimensional point", what));
  if (!all_finite(p)) throw InvalidSet(fmt::format("{}: non-finite coordinate", what));
}

void require_dimension(const ConvexSet& set, const Point& x) {
  if (x.size() != set.dimension()) {
    throw DimensionMismatch(
        fmt::format("point has dimension {}, {} set has dimension {}", x.size(), set.kind(),
                    set.dimension()));
  }
}

Point project_closed_form(const Ball& b, const Point& x) {
  const Point v = x - b.center;
  const double norm = v.norm();
  if (norm <= b.radius) return x;
  return b.center + (b.radius / norm) * v;
}

Point project_closed_form(const Box& b, const Point& x) {
  return x.cwiseMax(b.lower).cwiseMin(b.upper);
}

Point project_closed_form(const Halfspace& h, const Point& x) {
  const double excess = h.normal.dot(x) - h.offset;
  if (excess <= 0.0) return x;
  return x - excess * h.normal;
}

Point project_closed_form(const AffineSubspace& a, const Point& x) {
  if (a.directions.cols() == 0) return a.basepoint;
  return a.basepoint + a.directions * (a.directions.transpose() * (x - a.basepoint));
}

ProjectionResult dykstra(const Intersection& k, const Point& x, const DykstraOptions& opts) {
  const std::size_t m = k.members.size();
  std::vector<Point> increments(m, Point::Zero(x.size()));
  Point current = x;
  double displacement = 0.0;
  for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    displacement = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Point shifted = current + increments[i];
      Point next = project(k.members[i], shifted, opts).point;
      increments[i] = shifted - next;
      displacement = std::max(displacement, (next - current).norm());
      current = std::move(next);
    }
    if (displacement <= opts.tolerance) {
      const double dist = (x - current).norm();
      return {std::move(current), dist, sweep, true};
    }
  }
  throw NonConvergence(fmt::format("Dykstra projection onto a {}-set intersection did not "
                                   "converge in {} sweeps (last displacement {:.3e})",
                                   m, opts.max_sweeps, displacement),
                       opts.max_sweeps, displacement);
}

}  // namespace

ConvexSet ConvexSet::ball(Point center, double radius) {
  require_finite(center, "ball center");
  if (!std::isfinite(radius) || radius < 0.0) {
    throw InvalidSet(fmt::format("ball radius must be finite and >= 0, got {}", radius));
  }
  const auto dim = center.size();
  return ConvexSet(Ball{std::move(center), radius}, dim);
}

ConvexSet ConvexSet::box(Point lower, Point upper) {
  require_finite(lower, "box lower");
  require_finite(upper, "box upper");
  if (lower.size() != upper.size()) {
    throw InvalidSet(fmt::format("box bounds have dimensions {} and {}", lower.size(),
                                 upper.size()));
  }
  for (Eigen::Index j = 0; j < lower.size(); ++j) {
    if (lower[j] > upper[j]) {
      throw InvalidSet(fmt::format("box lower[{}] = {} exceeds upper[{}] = {}", j, lower[j], j,
                                   upper[j]));
    }
  }
  const auto dim = lower.size();
  return ConvexSet(Box{std::move(lower), std::move(upper)}, dim);
}

ConvexSet ConvexSet::halfspace(Point normal, double offset) {
  require_finite(normal, "halfspace normal");
  if (!std::isfinite(offset)) throw InvalidSet("halfspace offset must be finite");
  const double norm = normal.norm();
  if (norm == 0.0) throw InvalidSet("halfspace normal must be nonzero");
  const auto dim = normal.size();
  return ConvexSet(Halfspace{normal / norm, offset / norm}, dim);
}

ConvexSet ConvexSet::affine(Point basepoint, Eigen::MatrixXd directions) {
  require_finite(basepoint, "affine basepoint");
  if (directions.cols() > 0 && directions.rows() != basepoint.size()) {
    throw InvalidSet(fmt::format("affine directions have {} rows, basepoint dimension is {}",
                                 directions.rows(), basepoint.size()));
  }
  if (directions.cols() > basepoint.size()) {
    throw InvalidSet("affine subspace has more directions than dimensions");
  }
  if (directions.cols() > 0) {
    if (!directions.allFinite()) throw InvalidSet("affine directions must be finite");
    const Eigen::MatrixXd gram = directions.transpose() * directions;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
    if ((gram - eye).cwiseAbs().maxCoeff() > 1e-12) {
      throw InvalidSet("affine directions must be pairwise orthonormal");
    }
  } else {
    directions.resize(basepoint.size(), 0);
  }
  const auto dim = basepoint.size();
  return ConvexSet(AffineSubspace{std::move(basepoint), std::move(directions)}, dim);
}

ConvexSet ConvexSet::intersection(std::vector<ConvexSet> members) {
  if (members.empty()) throw InvalidSet("intersection needs at least one member");
  const auto dim = members.front().dimension();
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (members[i].dimension() != dim) {
      throw InvalidSet(fmt::format("intersection member {} has dimension {}, expected {}", i,
                                   members[i].dimension(), dim));
    }
  }
  return ConvexSet(Intersection{std::move(members)}, dim);
}

std::string_view ConvexSet::kind() const noexcept {
  return std::visit(Overloaded{[](const Ball&) { return std::string_view("ball"); },
                               [](const Box&) { return std::string_view("box"); },
                               [](const Halfspace&) { return std::string_view("halfspace"); },
                               [](const AffineSubspace&) { return std::string_view("affine"); },
                               [](const Intersection&) {
                                 return std::string_view("intersection");
                               }},
                    v_);
}

ProjectionResult project(const ConvexSet& set, const Point& x, const DykstraOptions& opts) {
  require_dimension(set, x);
  return std::visit(Overloaded{[&](const Intersection& k) { return dykstra(k, x, opts); },
                               [&](const auto& simple) {
                                 Point p = project_closed_form(simple, x);
                                 const double dist = (x - p).norm();
                                 return ProjectionResult{std::move(p), dist, 0, true};
                               }},
                    set.variant());
}

double distance(const ConvexSet& set, const Point& x, const DykstraOptions& opts) {
  return project(set, x, opts).distance;
}

bool contains(const ConvexSet& set, const Point& x, double tol) {
  return distance(set, x) <= tol;
}

double membership_residual(const ConvexSet& set, const Point& x) {
  require_dimension(set, x);
  return std::visit(Overloaded{[&](const Intersection& k) {
                                 double worst = 0.0;
                                 for (const auto& m : k.members) {
                                   worst = std::max(worst, membership_residual(m, x));
                                 }
                                 return worst;
                               },
                               [&](const auto& simple) {
                                 return (x - project_closed_form(simple, x)).norm();
                               }},
                    set.variant());
}

bool all_finite(const Point& x) noexcept { return x.allFinite(); }

}  // namespace randcons
