#pragma once

#include <cstdint>
#include <vector>

#include "qfsim/packet.hpp"
#include "qfsim/profile.hpp"
#include "qfsim/rng.hpp"
#include "qfsim/scenario.hpp"
#include "qfsim/time.hpp"

namespace qfsim {

// Deterministic arrival generator for one flow. Emission k happens at
// start_offset + k * gap; periodic flows emit one packet per emission,
// video flows emit a whole frame whose packet count is drawn per emission
// index. Everything is derived from (seed, flow_id, k), so the stream can
// be replayed from any TTI without history.
struct ArrivalProcess {
  std::int64_t flow_id = 0;
  std::uint64_t seed = 0;
  ArrivalKind kind = ArrivalKind::kPeriodic;
  std::int64_t packet_size_bytes = 0;
  Nanos gap_ns = 0;
  Nanos start_offset_ns = 0;
  std::int64_t burst_min = 1;
  std::int64_t burst_max = 1;
};

inline ArrivalProcess make_arrival_process(const QfiProfile& p,
                                           std::int64_t flow_id,
                                           std::uint64_t run_seed,
                                           OffsetPolicy offsets) {
  ArrivalProcess a;
  a.flow_id = flow_id;
  a.seed = run_seed;
  a.kind = p.arrival;
  a.packet_size_bytes = p.packet_size_bytes;
  a.gap_ns = p.arrival == ArrivalKind::kPeriodic ? p.period_ns
                                                 : p.frame_interval_ns;
  a.burst_min = p.burst_min;
  a.burst_max = p.burst_max;
  if (offsets == OffsetPolicy::kUniform && a.gap_ns > 0) {
    const std::uint64_t h = rng::draw(run_seed,
                                      static_cast<std::uint64_t>(flow_id),
                                      rng::Stream::kStartOffset, 0);
    a.start_offset_ns = rng::to_range(h, 0, a.gap_ns - 1);
  }
  return a;
}

inline std::int64_t burst_size(const ArrivalProcess& a, std::int64_t k) {
  if (a.kind == ArrivalKind::kPeriodic) return 1;
  const std::uint64_t h =
      rng::draw(a.seed, static_cast<std::uint64_t>(a.flow_id),
                rng::Stream::kBurstSize, static_cast<std::uint64_t>(k));
  return rng::to_range(h, a.burst_min, a.burst_max);
}

// Appends the packets whose emission time falls in [start_ns, end_ns) of
// the given TTI. Emission exactly on the slot start belongs to that slot.
inline void arrivals_at(const ArrivalProcess& a, const TtiClock& tti,
                        std::vector<Packet>& out) {
  const Nanos t0 = tti.start_ns();
  const Nanos t1 = tti.end_ns();
  if (a.gap_ns <= 0 || a.start_offset_ns >= t1) return;

  std::int64_t k = 0;
  if (t0 > a.start_offset_ns) {
    k = (t0 - a.start_offset_ns + a.gap_ns - 1) / a.gap_ns;
  }
  for (; a.start_offset_ns + k * a.gap_ns < t1; ++k) {
    const std::int64_t count = burst_size(a, k);
    for (std::int64_t i = 0; i < count; ++i) {
      Packet p;
      p.flow_id = a.flow_id;
      p.size_bytes = a.packet_size_bytes;
      p.arrival_tti = tti.index;
      p.remaining_bytes = a.packet_size_bytes;
      out.push_back(p);
    }
  }
}

// Mean offered load implied by the process, useful for validation output.
inline double offered_load_bps(const ArrivalProcess& a) {
  if (a.gap_ns <= 0) return 0.0;
  const double per_emission =
      a.kind == ArrivalKind::kPeriodic
          ? 1.0
          : 0.5 * static_cast<double>(a.burst_min + a.burst_max);
  return per_emission * static_cast<double>(a.packet_size_bytes) * 8.0 /
         nanos_to_seconds(a.gap_ns);
}

}  // namespace qfsim
