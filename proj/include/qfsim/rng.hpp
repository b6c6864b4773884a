#pragma once

#include <cstdint>
#include <initializer_list>

namespace qfsim::rng {

// Counter-based randomness: every draw is a pure function of
// (run seed, flow id, stream tag, counter). Traffic and channel
// realizations are therefore identical no matter which scheduler runs or
// in what order flows are visited, which is what makes paired scheduler
// comparisons on a shared seed meaningful.

enum class Stream : std::uint64_t {
  kStartOffset = 0x01,
  kBurstSize = 0x02,
  kChannelBlock = 0x03,
  kFuzz = 0x7f,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6a09e667f3bcc909ull;
  for (std::uint64_t w : words) h = splitmix64(h ^ w);
  return h;
}

constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t flow_id,
                             Stream stream, std::uint64_t counter) {
  return hash({seed, flow_id, static_cast<std::uint64_t>(stream), counter});
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi]; modulo bias is negligible for the small
// ranges used here (offsets and burst sizes).
constexpr std::int64_t to_range(std::uint64_t h, std::int64_t lo,
                                std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(h % span);
}

}  // namespace qfsim::rng
