#pragma once

#include <cmath>
#include <cstdint>

namespace aislesim {

// splitmix64 finalizer; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Small deterministic generator (splitmix64). One instance per logical
// stream; streams never share state.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound > 0. Lemire reduction; the tiny
  // modulo bias is irrelevant at our bounds (< 2^32).
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  // Exponential with the given mean, via the inverse CDF.
  double exponential(double mean) { return -mean * std::log1p(-next_unit()); }

 private:
  std::uint64_t state_;
};

// Purpose tags keep streams independent per (trial, robot, use).
namespace stream_purpose {
inline constexpr std::uint64_t kTaskPlacement = 1;
inline constexpr std::uint64_t kTaskLevel = 2;
inline constexpr std::uint64_t kTaskCost = 3;
inline constexpr std::uint64_t kStudy = 4;
inline constexpr std::uint64_t kFieldNoise = 5;
}  // namespace stream_purpose

// Root of all randomness for a run. Derives independent streams keyed by
// (trial, robot, purpose) so results cannot depend on execution schedule.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  RngStream stream(std::uint64_t trial, std::uint64_t robot, std::uint64_t purpose) const {
    std::uint64_t s = mix64(seed_ ^ 0xa5a5a5a5a5a5a5a5ULL);
    s = mix64(s ^ (trial + 1) * 0xd1342543de82ef95ULL);
    s = mix64(s ^ (robot + 1) * 0xaf251af3b0f025b5ULL);
    s = mix64(s ^ (purpose + 1) * 0x9e6c63d0876a9a47ULL);
    return RngStream(s);
  }

 private:
  std::uint64_t seed_;
};

}  // namespace aislesim
