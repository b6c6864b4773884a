#pragma once

#include <cassert>
#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "qfsim/packet.hpp"
#include "qfsim/profile.hpp"

namespace qfsim {

// Mutable per-flow run state: the FIFO queue plus the counters the
// scheduler and the metrics pipeline read. `queued_bytes` mirrors the sum
// of remaining bytes in `queue` so per-TTI bookkeeping stays O(1).
struct FlowState {
  std::int64_t flow_id = 0;
  int ue_id = 0;
  QfiProfile profile;
  std::int64_t buffer_packets = 0;

  std::deque<Packet> queue;
  std::int64_t queued_bytes = 0;

  // Exponentially averaged served rate in bits/s, never below the
  // configured floor so rate ratios stay finite.
  double avg_throughput_bps = 1.0;

  std::int64_t packets_arrived = 0;
  std::int64_t bytes_arrived = 0;
  std::int64_t packets_dropped = 0;
  std::int64_t packets_departed = 0;
  std::int64_t bits_served = 0;
  std::int64_t bits_served_this_tti = 0;

  std::int64_t head_wait_ttis(std::int64_t now_tti) const {
    if (queue.empty()) return 0;
    return now_tti - queue.front().arrival_tti;
  }
};

// Appends packets in arrival order, tail-dropping once the buffer is
// full. Returns the number of drops.
inline std::int64_t enqueue(FlowState& flow, std::span<const Packet> pkts) {
  std::int64_t drops = 0;
  for (const Packet& p : pkts) {
    ++flow.packets_arrived;
    flow.bytes_arrived += p.size_bytes;
    if (static_cast<std::int64_t>(flow.queue.size()) >= flow.buffer_packets) {
      ++flow.packets_dropped;
      ++drops;
      continue;
    }
    flow.queue.push_back(p);
    flow.queued_bytes += p.remaining_bytes;
  }
  return drops;
}

// Drains `bytes` from the head of the queue. Packets whose last byte is
// served in this TTI depart now and are appended to `departed`. Partially
// served packets stay at the head with their remaining bytes reduced.
inline void serve(FlowState& flow, std::int64_t bytes, std::int64_t now_tti,
                  std::vector<Packet>& departed) {
  assert(bytes <= flow.queued_bytes);
  flow.bits_served_this_tti += bytes * 8;
  flow.bits_served += bytes * 8;
  while (bytes > 0) {
    Packet& head = flow.queue.front();
    const std::int64_t take =
        head.remaining_bytes < bytes ? head.remaining_bytes : bytes;
    head.remaining_bytes -= take;
    flow.queued_bytes -= take;
    bytes -= take;
    if (head.remaining_bytes == 0) {
      head.departure_tti = now_tti;
      ++flow.packets_departed;
      departed.push_back(head);
      flow.queue.pop_front();
    }
  }
}

}  // namespace qfsim
