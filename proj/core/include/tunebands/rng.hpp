#ifndef TUNEBANDS_RNG_HPP
#define TUNEBANDS_RNG_HPP

#include <cmath>
#include <cstdint>

namespace tunebands {

// Counter-based generator: the i-th output is a pure function of (key, i),
// so substreams split off for parallel work reproduce bit-identically no
// matter how replicates are scheduled across threads.  The mixer is the
// SplitMix64 finalizer.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed)
      : key_(mix(seed ^ 0x6a09e667f3bcc909ull)), counter_(0) {}

  // Independent child stream; a pure function of (key, index).
  SplitRng substream(std::uint64_t index) const {
    SplitRng child(0);
    child.key_ = mix(key_ + 0x9e3779b97f4a7c15ull * (index + 1));
    child.counter_ = 0;
    return child;
  }

  std::uint64_t next_u64() {
    return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_);
  }

  // Uniform on the open interval (0, 1): 53-bit mantissa, offset half a step
  // so that 0 and 1 are unreachable.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Unbiased integer in [0, n); Lemire multiply-shift reduction.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Standard normal via Box-Muller; consumes exactly two outputs.
  double next_gaussian() {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925286766559 * u2);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace tunebands

#endif  // TUNEBANDS_RNG_HPP
