#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qfsim/time.hpp"

namespace qfsim {

enum class ArrivalKind {
  kPeriodic,       // one fixed-size packet every period
  kVariableVideo,  // a burst of packets per frame interval
};

// Static description of one QoS flow template. Every UE in a scenario
// instantiates each profile once, so a profile describes a traffic class
// (its arrival process, QoS targets, and scheduling knobs), not a single
// flow instance.
struct QfiProfile {
  std::string role;  // class label used in reports: "control", "sensor", ...
  int qfi = 0;
  int five_qi = 0;

  ArrivalKind arrival = ArrivalKind::kPeriodic;
  std::int64_t packet_size_bytes = 0;
  Nanos period_ns = 0;          // kPeriodic inter-arrival gap
  Nanos frame_interval_ns = 0;  // kVariableVideo frame gap
  std::int64_t burst_min = 5;   // packets per video frame, inclusive range
  std::int64_t burst_max = 40;

  std::optional<Nanos> delay_bound_ns;  // unset: no deadline
  std::optional<double> gbr_bps;        // unset: non-GBR flow

  int priority_level = 1;  // 1 is most important
  // Explicit scheduler weight in (0, 1]; when unset the weight is
  // 1 / priority_level.
  std::optional<double> priority_weight;

  // Per-class overrides of the scheduler-wide utility weights.
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;

  std::optional<double> rate_cap_bps;          // per-TTI serving budget
  std::optional<std::int64_t> buffer_packets;  // overrides scenario default

  bool operator==(const QfiProfile&) const = default;
};

inline double effective_priority_weight(const QfiProfile& p) {
  if (p.priority_weight) return *p.priority_weight;
  return 1.0 / static_cast<double>(p.priority_level);
}

}  // namespace qfsim
