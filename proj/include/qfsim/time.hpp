#pragma once

#include <cstdint>

namespace qfsim {

// All simulation time is integer nanoseconds so arrival boundaries and
// window edges are exact; seconds appear only at the configuration and
// reporting surfaces.
using Nanos = std::int64_t;

inline constexpr Nanos kNanosPerSecond = 1'000'000'000;
inline constexpr Nanos kNanosPerMilli = 1'000'000;
inline constexpr Nanos kDefaultTtiNanos = kNanosPerMilli;

constexpr double nanos_to_seconds(Nanos ns) {
  return static_cast<double>(ns) / static_cast<double>(kNanosPerSecond);
}

constexpr double nanos_to_millis(Nanos ns) {
  return static_cast<double>(ns) / static_cast<double>(kNanosPerMilli);
}

constexpr Nanos seconds_to_nanos(double s) {
  return static_cast<Nanos>(s * static_cast<double>(kNanosPerSecond) + 0.5);
}

// Discrete slot clock. `index` counts elapsed slots; the slot covers
// [start_ns, end_ns).
struct TtiClock {
  std::int64_t index = 0;
  Nanos tti_ns = kDefaultTtiNanos;

  constexpr Nanos start_ns() const { return index * tti_ns; }
  constexpr Nanos end_ns() const { return (index + 1) * tti_ns; }
  constexpr double tti_seconds() const { return nanos_to_seconds(tti_ns); }
  constexpr void advance() { ++index; }
};

}  // namespace qfsim
