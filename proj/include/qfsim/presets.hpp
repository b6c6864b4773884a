#pragma once

#include <string>
#include <vector>

#include "qfsim/scenario.hpp"

namespace qfsim {

// Built-in industrial-IoT cell: every UE carries a command-and-control
// flow, a telemetry flow with a rate guarantee, and a monitoring-video
// flow, competing for a 20 Mbps downlink under a fixed per-UE channel
// spread. This is the scenario the regression thresholds are pinned to.
//
// Share weights are deliberate: control rides on its deadline-urgency
// term plus the low-rate boost of the PF denominator, so it gets a small
// share weight; video has no deadline and no guarantee, so the share
// weight is its only lever and is set to the ceiling. Sensors sit in
// between and lean on the rate-guarantee term.
inline Scenario reference_scenario() {
  Scenario s;
  s.num_ues = 6;
  s.sim_duration_s = 10.0;
  s.cell_capacity_bps = 20e6;
  s.num_prbs = 25;
  s.seed = 42;
  s.start_offsets = OffsetPolicy::kUniform;
  s.tti_ns = kDefaultTtiNanos;
  s.buffer_packets = 500;
  s.channel.variation = ChannelVariation::kStaticPerUe;
  s.channel.multiplier_lo = 0.6;
  s.channel.multiplier_hi = 1.0;

  QfiProfile control;
  control.role = "control";
  control.qfi = 1;
  control.five_qi = 85;
  control.arrival = ArrivalKind::kPeriodic;
  control.packet_size_bytes = 64;
  control.period_ns = 1 * kNanosPerMilli;
  control.delay_bound_ns = 5 * kNanosPerMilli;
  control.priority_level = 1;
  control.priority_weight = 0.25;

  QfiProfile sensor;
  sensor.role = "sensor";
  sensor.qfi = 2;
  sensor.five_qi = 6;
  sensor.arrival = ArrivalKind::kPeriodic;
  sensor.packet_size_bytes = 128;
  sensor.period_ns = 10 * kNanosPerMilli;
  sensor.delay_bound_ns = 50 * kNanosPerMilli;
  sensor.gbr_bps = 100e3;
  sensor.priority_level = 1;
  sensor.priority_weight = 0.5;

  QfiProfile video;
  video.role = "video";
  video.qfi = 3;
  video.five_qi = 9;
  video.arrival = ArrivalKind::kVariableVideo;
  video.packet_size_bytes = 1000;
  video.frame_interval_ns = 33'333'333;  // 30 fps
  video.burst_min = 4;
  video.burst_max = 22;
  video.priority_level = 1;
  video.priority_weight = 1.0;
  video.rate_cap_bps = 8e6;

  s.flows_per_ue = {control, sensor, video};
  return s;
}

struct WeightPreset {
  std::string name;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// The three operating points exercised by the weight sweep.
inline std::vector<WeightPreset> weight_presets() {
  return {
      {"delay-tuned", 0.7, 0.2, 0.1},
      {"balanced", 0.4, 0.3, 0.3},
      {"fairness-tuned", 0.2, 0.2, 0.6},
  };
}

}  // namespace qfsim
