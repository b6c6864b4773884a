#pragma once

#include <cstdint>

namespace qfsim {

inline constexpr std::int64_t kPendingDeparture = -1;

struct Packet {
  std::int64_t flow_id = 0;
  std::int64_t size_bytes = 0;
  std::int64_t arrival_tti = 0;
  std::int64_t remaining_bytes = 0;  // shrinks as the flow is served
  std::int64_t departure_tti = kPendingDeparture;

  bool departed() const { return departure_tti != kPendingDeparture; }
};

}  // namespace qfsim
