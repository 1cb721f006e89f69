#pragma once

#include <cstdint>
#include <random>

namespace randcons {

/// Purpose keys for substreams. Graph and decision randomness never share a key.
enum class StreamLabel : std::uint64_t {
  kGraphStep = 1,
  kGraphWindow = 2,
  kGraphInterval = 3,
  kDecision = 4,
};

/// One independent pseudo-random stream (mt19937_64 underneath).
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits; identical on every platform.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Master seed from which labeled substreams are derived.
///
/// substream(label, index) depends only on (master, label, index), so
/// re-drawing window m or step k never perturbs any other window or step.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t master) : master_(master) {}

  std::uint64_t master() const noexcept { return master_; }
  Stream substream(StreamLabel label, std::uint64_t index) const;

 private:
  std::uint64_t master_;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace randcons
