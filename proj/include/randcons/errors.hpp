#pragma once

#include <stdexcept>
#include <cstdint>
#include <string>

namespace randcons {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A set description violates its own invariants (bad radius, unordered box, ...).
class InvalidSet : public Error {
 public:
  using Error::Error;
};

/// The iterative intersection projector ran out of sweeps.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, int sweeps, double displacement)
      : Error(what), sweeps_(sweeps), displacement_(displacement) {}
  int sweeps() const noexcept { return sweeps_; }
  double displacement() const noexcept { return displacement_; }

 private:
  int sweeps_;
  double displacement_;
};

class InfeasibleEta : public Error {
 public:
  using Error::Error;
};

class MixedSizes : public Error {
 public:
  using Error::Error;
};

class NotBidirectional : public Error {
 public:
  using Error::Error;
};

class InvalidGraph : public Error {
 public:
  using Error::Error;
};

/// Operation not available in the configured protocol mode.
class ModeError : public Error {
 public:
  using Error::Error;
};

class EmptyTrace : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A sample-path invariant (max-distance monotonicity or anchor drift) was breached.
class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& what, std::uint64_t seed, long step, int agent,
                     double magnitude)
      : Error(what), seed_(seed), step_(step), agent_(agent), magnitude_(magnitude) {}
  std::uint64_t seed() const noexcept { return seed_; }
  long step() const noexcept { return step_; }
  int agent() const noexcept { return agent_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  std::uint64_t seed_;
  long step_;
  int agent_;
  double magnitude_;
};

}  // namespace randcons
