#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qfsim/flow.hpp"
#include "qfsim/profile.hpp"
#include "qfsim/time.hpp"

namespace qfsim {

enum class OffsetPolicy {
  kUniform,  // per-flow random start phase in [0, period)
  kZero,     // all flows start at t = 0
};

enum class ChannelVariation {
  kNone,          // every UE sees the nominal efficiency
  kStaticPerUe,   // fixed per-UE multiplier, evenly spaced
  kBlockFading,   // per-UE multiplier redrawn every block
};

struct ChannelConfig {
  ChannelVariation variation = ChannelVariation::kStaticPerUe;
  double multiplier_lo = 0.6;
  double multiplier_hi = 1.0;
  std::int64_t block_length_ttis = 50;

  bool operator==(const ChannelConfig&) const = default;
};

// Knobs of the composite-utility scheduler plus the averaging horizon
// shared by all policies.
struct SchedulerConfig {
  double alpha = 0.4;  // weight of deadline urgency
  double beta = 0.3;   // weight of guaranteed-rate deficit
  double gamma = 0.3;  // weight of the static priority scalar

  std::int64_t ema_window_ttis = 100;
  double delay_urgency_cap = 10.0;
  Nanos epsilon_time_ns = 100'000;  // guards the urgency denominator
  double throughput_floor_bps = 1.0;
  Nanos gbr_window_ns = 100 * kNanosPerMilli;

  bool operator==(const SchedulerConfig&) const = default;
};

struct Scenario {
  int num_ues = 6;
  std::vector<QfiProfile> flows_per_ue;  // instantiated once per UE
  double sim_duration_s = 10.0;
  double cell_capacity_bps = 20e6;
  int num_prbs = 25;
  std::int64_t seed = 1;
  OffsetPolicy start_offsets = OffsetPolicy::kUniform;
  Nanos tti_ns = kDefaultTtiNanos;
  std::int64_t buffer_packets = 500;
  ChannelConfig channel;
  SchedulerConfig sched;

  bool operator==(const Scenario&) const = default;

  int flows_per_ue_count() const {
    return static_cast<int>(flows_per_ue.size());
  }
  int num_flows() const { return num_ues * flows_per_ue_count(); }
  std::int64_t total_ttis() const {
    return static_cast<std::int64_t>(
        std::llround(sim_duration_s / nanos_to_seconds(tti_ns)));
  }
  // Spectral efficiency at multiplier 1.0, sized so a full grid carries
  // exactly the configured cell capacity.
  double base_bits_per_prb() const {
    return cell_capacity_bps * nanos_to_seconds(tti_ns) / num_prbs;
  }
};

// Returns human-readable violations; an empty result means the scenario is
// runnable. Each message names the offending field.
inline std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> errs;
  auto err = [&errs](std::string msg) { errs.push_back(std::move(msg)); };

  if (s.num_ues <= 0) err("num_ues must be positive");
  if (s.flows_per_ue.empty()) err("at least one flow profile is required");
  if (s.sim_duration_s <= 0) err("sim_duration must be positive");
  if (s.cell_capacity_bps <= 0) err("cell_capacity must be positive");
  if (s.num_prbs <= 0) err("num_prbs must be positive");
  if (s.tti_ns <= 0) err("tti_duration must be positive");
  if (s.buffer_packets <= 0) err("buffer_capacity must be positive");

  if (s.channel.multiplier_lo <= 0 ||
      s.channel.multiplier_hi < s.channel.multiplier_lo) {
    err("channel multipliers must satisfy 0 < lo <= hi");
  }
  if (s.channel.variation == ChannelVariation::kBlockFading &&
      s.channel.block_length_ttis <= 0) {
    err("channel block_length must be positive");
  }

  const SchedulerConfig& c = s.sched;
  if (c.alpha < 0 || c.beta < 0 || c.gamma < 0 ||
      c.alpha + c.beta + c.gamma <= 0) {
    err("utility weights must be non-negative and not all zero");
  }
  if (c.ema_window_ttis < 1) err("ema_window must be at least 1");
  if (c.delay_urgency_cap <= 0) err("delay_urgency_cap must be positive");
  if (c.epsilon_time_ns <= 0) err("epsilon_time must be positive");
  if (c.throughput_floor_bps <= 0) err("throughput_floor must be positive");
  if (c.gbr_window_ns < s.tti_ns) {
    err("gbr_window must cover at least one TTI");
  }

  for (const QfiProfile& p : s.flows_per_ue) {
    const std::string where = "flow." + p.role + ": ";
    if (p.role.empty()) err("flow profiles need a non-empty role name");
    if (p.packet_size_bytes <= 0) err(where + "packet_size must be positive");
    if (p.arrival == ArrivalKind::kPeriodic && p.period_ns <= 0) {
      err(where + "period must be positive for periodic arrivals");
    }
    if (p.arrival == ArrivalKind::kVariableVideo) {
      if (p.frame_interval_ns <= 0) {
        err(where + "frame_interval must be positive for video arrivals");
      }
      if (p.burst_min < 1 || p.burst_max < p.burst_min) {
        err(where + "burst range must satisfy 1 <= min <= max");
      }
    }
    if (p.delay_bound_ns && *p.delay_bound_ns <= 0) {
      err(where + "delay_bound must be positive when set");
    }
    if (p.gbr_bps && *p.gbr_bps <= 0) {
      err(where + "gbr must be positive when set");
    }
    if (p.priority_level < 1) err(where + "priority_level must be >= 1");
    if (p.priority_weight &&
        (*p.priority_weight <= 0 || *p.priority_weight > 1)) {
      err(where + "priority_weight must lie in (0, 1]");
    }
    for (const auto* w : {&p.alpha, &p.beta, &p.gamma}) {
      if (*w && **w < 0) err(where + "utility weights must be non-negative");
    }
    if (p.rate_cap_bps && *p.rate_cap_bps <= 0) {
      err(where + "rate_cap must be positive when set");
    }
    if (p.buffer_packets && *p.buffer_packets <= 0) {
      err(where + "buffer_capacity must be positive when set");
    }
  }
  return errs;
}

// Builds the flow table: UE u hosts one instance of each profile, and
// flow ids are assigned UE-major so id = u * profiles + slot.
inline std::vector<FlowState> make_flows(const Scenario& s) {
  std::vector<FlowState> flows;
  flows.reserve(static_cast<std::size_t>(s.num_flows()));
  for (int ue = 0; ue < s.num_ues; ++ue) {
    for (const QfiProfile& p : s.flows_per_ue) {
      FlowState f;
      f.flow_id = static_cast<std::int64_t>(flows.size());
      f.ue_id = ue;
      f.profile = p;
      f.buffer_packets = p.buffer_packets.value_or(s.buffer_packets);
      f.avg_throughput_bps = s.sched.throughput_floor_bps;
      flows.push_back(std::move(f));
    }
  }
  return flows;
}

}  // namespace qfsim
