#pragma once

#include <cstdint>

namespace cqed {

// SplitMix64 (Steele, Lea & Flood 2014). Used both as a stream generator and
// as the mixing function that derives independent per-task streams from a
// (seed, index) pair, so parallel consumers never share state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t operator()() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform double in the open interval (0, 1) with 53 random bits.
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t state() const noexcept { return state_; }

  // Independent stream for task `index` of a run seeded with `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 mixer(seed);
    const std::uint64_t base = mixer();
    SplitMix64 keyed(base ^ (index * 0xd1b54a32d192ed03ull));
    return SplitMix64(keyed());
  }

 private:
  std::uint64_t state_;
};

}  // namespace cqed
