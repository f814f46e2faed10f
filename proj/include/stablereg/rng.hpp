#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace stablereg {

/// Counter-based generator built on the SplitMix64 finalizer.
///
/// Output k of a stream is mix(key + (k + 1) * gamma), so any position is
/// reachable in O(1) via `discard`, and independent streams are obtained by
/// hashing a tuple of indices into the key. Output is identical on every
/// platform, unlike the std:: distributions.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(std::uint64_t key) noexcept : key_(key) {}

  /// Stream keyed by (master, indices...), e.g. (seed, alpha_index, rep).
  static StreamRng derive(std::uint64_t master,
                          std::initializer_list<std::uint64_t> indices) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    ++counter_;
    return mix(key_ + counter_ * kGamma);
  }

  void discard(std::uint64_t n) noexcept { counter_ += n; }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace stablereg
