#include "randcons/random.hpp"

namespace randcons {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Stream RandomSource::substream(StreamLabel label, std::uint64_t index) const {
  std::uint64_t h = mix64(master_);
  h = mix64(h ^ static_cast<std::uint64_t>(label));
  h = mix64(h ^ index);
  return Stream(h);
}

}  // namespace randcons
