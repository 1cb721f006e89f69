#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "randcons/convex.hpp"

namespace randcons::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Closed-form projection onto Ball(center, r) ∩ {<a, x - center> <= 0}
/// (a half-ball; `normal` need not be unit length).
Point half_ball_projection(const Point& center, double radius, const Point& normal,
                           const Point& x);

/// Closed-form projection onto {<a1,x> <= b1} ∩ {<a2,x> <= b2} by active-set
/// enumeration. a1 and a2 must be linearly independent.
Point wedge_projection(const Point& a1, double b1, const Point& a2, double b2, const Point& x);

/// Non-expansiveness, variational inequality, idempotence, the subset
/// inequality |P_K y|^2_{K0} + |y|^2_K <= |y|^2_{K0} and convexity of the
/// distance, each over `pairs` random samples per set variant and dimension.
std::vector<CheckResult> projection_properties(std::size_t pairs, std::uint64_t seed,
                                               std::span<const int> dimensions);

/// Dykstra against the two closed-form oracles above, `queries` each.
std::vector<CheckResult> dykstra_agreement(std::size_t queries, std::uint64_t seed,
                                           double tolerance = 1e-6);

/// Everything the `check` subcommand runs: projection properties, Dykstra
/// agreement, graph weight/connectivity certification and sample-path
/// invariants on short ensembles of every preset.
std::vector<CheckResult> run_all(std::uint64_t seed, bool quick);

}  // namespace randcons::checks
