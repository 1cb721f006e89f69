#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "randcons/errors.hpp"

namespace randcons {

/// A point in R^d. Agents' states, set centers and normals all use this.
using Point = Eigen::VectorXd;

/// Membership tolerance shared by the projectors and the tests.
inline constexpr double kMembershipTolerance = 1e-9;

/// Closed Euclidean ball. Radius 0 is a singleton.
struct Ball {
  Point center;
  double radius = 0.0;
};

/// Axis-aligned box, lower <= upper componentwise.
struct Box {
  Point lower;
  Point upper;
};

/// { x : <normal, x> <= offset }, normal stored with unit length.
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

/// basepoint + span(directions); the columns of `directions` are orthonormal.
/// Zero columns describe the single point `basepoint`.
struct AffineSubspace {
  Point basepoint;
  Eigen::MatrixXd directions;
};

class ConvexSet;

/// Intersection of member sets sharing one dimension.
struct Intersection {
  std::vector<ConvexSet> members;
};

/// Immutable closed convex set in R^d.
///
/// Construct through the named factories, which validate the set's invariants
/// and throw InvalidSet on violation. Copies are cheap enough for desk-scale
/// problems and the type has no mutable state, so a single instance may be
/// projected onto from many threads at once.
class ConvexSet {
 public:
  using Variant = std::variant<Ball, Box, Halfspace, AffineSubspace, Intersection>;

  static ConvexSet ball(Point center, double radius);
  static ConvexSet box(Point lower, Point upper);
  /// Rescales (normal, offset) so that |normal| = 1.
  static ConvexSet halfspace(Point normal, double offset);
  static ConvexSet affine(Point basepoint, Eigen::MatrixXd directions);
  static ConvexSet intersection(std::vector<ConvexSet> members);

  Eigen::Index dimension() const noexcept { return dim_; }
  const Variant& variant() const noexcept { return v_; }
  /// "ball", "box", "halfspace", "affine" or "intersection".
  std::string_view kind() const noexcept;

 private:
  ConvexSet(Variant v, Eigen::Index dim) : v_(std::move(v)), dim_(dim) {}

  Variant v_;
  Eigen::Index dim_;
};

struct ProjectionResult {
  Point point;
  double distance = 0.0;
  /// Dykstra sweeps; 0 for closed-form projectors.
  int iterations = 0;
  bool converged = true;
};

/// Stopping rule for the intersection projector.
struct DykstraOptions {
  /// Largest displacement of any intermediate iterate over one sweep.
  double tolerance = 1e-10;
  int max_sweeps = 10000;
};

/// Euclidean projection of x onto `set`.
///
/// Closed form for every variant except Intersection, which runs Dykstra's
/// alternating projection over the members. Throws DimensionMismatch, and
/// NonConvergence when Dykstra exhausts `opts.max_sweeps` (typically an empty
/// or badly conditioned intersection).
ProjectionResult project(const ConvexSet& set, const Point& x, const DykstraOptions& opts = {});

/// |x|_K, the distance from x to the set.
double distance(const ConvexSet& set, const Point& x, const DykstraOptions& opts = {});

bool contains(const ConvexSet& set, const Point& x, double tol = kMembershipTolerance);

/// Infeasibility measure that never iterates: exact distance for the simple
/// variants, max of the members' residuals for an intersection.
double membership_residual(const ConvexSet& set, const Point& x);

bool all_finite(const Point& x) noexcept;

}  // namespace randcons
