#include <gtest/gtest.h>

#include "qfsim/flow.hpp"
#include "qfsim/presets.hpp"
#include "qfsim/profile.hpp"
#include "qfsim/rng.hpp"
#include "qfsim/scenario.hpp"
#include "qfsim/time.hpp"

namespace qfsim {
namespace {

TEST(TimeTest, ClockWindowsAreContiguous) {
  TtiClock c{0, kDefaultTtiNanos};
  EXPECT_EQ(c.start_ns(), 0);
  EXPECT_EQ(c.end_ns(), 1'000'000);
  c.advance();
  EXPECT_EQ(c.index, 1);
  EXPECT_EQ(c.start_ns(), 1'000'000);
  EXPECT_DOUBLE_EQ(c.tti_seconds(), 1e-3);
}

TEST(TimeTest, SecondsRoundTrip) {
  EXPECT_EQ(seconds_to_nanos(0.001), 1'000'000);
  EXPECT_EQ(seconds_to_nanos(10.0), 10'000'000'000);
  EXPECT_DOUBLE_EQ(nanos_to_millis(5 * kNanosPerMilli), 5.0);
  for (Nanos ns : {Nanos{1}, Nanos{999}, Nanos{33'333'333},
                   Nanos{100 * kNanosPerMilli}, Nanos{7'000'000'001}}) {
    EXPECT_EQ(seconds_to_nanos(nanos_to_seconds(ns)), ns) << ns;
  }
}

TEST(RngTest, DrawsAreDeterministicAndSeedSensitive) {
  const auto a = rng::draw(1, 2, rng::Stream::kBurstSize, 3);
  EXPECT_EQ(a, rng::draw(1, 2, rng::Stream::kBurstSize, 3));
  EXPECT_NE(a, rng::draw(2, 2, rng::Stream::kBurstSize, 3));
  EXPECT_NE(a, rng::draw(1, 3, rng::Stream::kBurstSize, 3));
  EXPECT_NE(a, rng::draw(1, 2, rng::Stream::kStartOffset, 3));
  EXPECT_NE(a, rng::draw(1, 2, rng::Stream::kBurstSize, 4));
}

TEST(RngTest, UnitAndRangeMappings) {
  for (std::uint64_t c = 0; c < 1000; ++c) {
    const auto h = rng::draw(7, 0, rng::Stream::kFuzz, c);
    const double u = rng::to_unit(h);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const auto r = rng::to_range(h, 4, 22);
    EXPECT_GE(r, 4);
    EXPECT_LE(r, 22);
  }
  EXPECT_EQ(rng::to_range(0, 5, 5), 5);
}

TEST(ProfileTest, PriorityWeightFallsBackToInverseLevel) {
  QfiProfile p;
  p.priority_level = 4;
  EXPECT_DOUBLE_EQ(effective_priority_weight(p), 0.25);
  p.priority_weight = 0.9;
  EXPECT_DOUBLE_EQ(effective_priority_weight(p), 0.9);
}

TEST(FlowTest, EnqueueTailDropsAtCapacity) {
  FlowState f;
  f.buffer_packets = 2;
  std::vector<Packet> pkts(3, Packet{0, 100, 5, 100, kPendingDeparture});
  EXPECT_EQ(enqueue(f, pkts), 1);
  EXPECT_EQ(f.packets_arrived, 3);
  EXPECT_EQ(f.packets_dropped, 1);
  EXPECT_EQ(f.queue.size(), 2u);
  EXPECT_EQ(f.queued_bytes, 200);
  EXPECT_EQ(f.bytes_arrived, 300);
}

TEST(FlowTest, ServeSplitsPacketsAndRecordsDepartures) {
  FlowState f;
  f.buffer_packets = 10;
  std::vector<Packet> pkts(2, Packet{0, 100, 3, 100, kPendingDeparture});
  enqueue(f, pkts);

  std::vector<Packet> departed;
  serve(f, 150, 4, departed);
  ASSERT_EQ(departed.size(), 1u);
  EXPECT_EQ(departed[0].departure_tti, 4);
  EXPECT_EQ(f.queued_bytes, 50);
  EXPECT_EQ(f.queue.front().remaining_bytes, 50);
  EXPECT_EQ(f.bits_served, 150 * 8);

  serve(f, 50, 6, departed);
  ASSERT_EQ(departed.size(), 2u);
  EXPECT_EQ(departed[1].departure_tti, 6);
  EXPECT_EQ(departed[1].arrival_tti, 3);
  EXPECT_TRUE(f.queue.empty());
  EXPECT_EQ(f.queued_bytes, 0);
  EXPECT_EQ(f.packets_departed, 2);
}

TEST(FlowTest, HeadWaitTracksOldestPacket) {
  FlowState f;
  f.buffer_packets = 10;
  EXPECT_EQ(f.head_wait_ttis(9), 0);
  std::vector<Packet> pkts{Packet{0, 10, 4, 10, kPendingDeparture}};
  enqueue(f, pkts);
  EXPECT_EQ(f.head_wait_ttis(9), 5);
}

TEST(ScenarioTest, DerivedQuantities) {
  const Scenario s = reference_scenario();
  EXPECT_EQ(s.total_ttis(), 10'000);
  EXPECT_EQ(s.num_flows(), 18);
  // 20 Mbps spread over 25 PRBs of 1 ms: 800 bits per PRB at full quality.
  EXPECT_DOUBLE_EQ(s.base_bits_per_prb(), 800.0);
}

TEST(ScenarioTest, ReferenceScenarioIsValid) {
  EXPECT_TRUE(validate_scenario(reference_scenario()).empty());
}

TEST(ScenarioTest, MakeFlowsAssignsUeMajorIds) {
  const Scenario s = reference_scenario();
  const auto flows = make_flows(s);
  ASSERT_EQ(flows.size(), 18u);
  EXPECT_EQ(flows[0].ue_id, 0);
  EXPECT_EQ(flows[0].profile.role, "control");
  EXPECT_EQ(flows[4].ue_id, 1);
  EXPECT_EQ(flows[4].profile.role, "sensor");
  EXPECT_EQ(flows[17].ue_id, 5);
  EXPECT_EQ(flows[17].profile.role, "video");
  for (std::size_t i = 0; i < flows.size(); ++i) {
    EXPECT_EQ(flows[i].flow_id, static_cast<std::int64_t>(i));
    EXPECT_EQ(flows[i].buffer_packets, 500);
    EXPECT_DOUBLE_EQ(flows[i].avg_throughput_bps,
                     s.sched.throughput_floor_bps);
  }
}

TEST(ScenarioTest, ValidationFlagsEachBadField) {
  Scenario s = reference_scenario();
  s.num_ues = 0;
  s.num_prbs = -1;
  s.channel.multiplier_lo = 0.0;
  s.flows_per_ue[0].packet_size_bytes = 0;
  s.flows_per_ue[1].priority_weight = 1.5;
  s.flows_per_ue[2].burst_min = 0;
  const auto errs = validate_scenario(s);
  EXPECT_EQ(errs.size(), 6u);
  bool priority_msg = false;
  for (const auto& e : errs) {
    if (e.find("priority_weight") != std::string::npos) priority_msg = true;
  }
  EXPECT_TRUE(priority_msg);
}

TEST(ScenarioTest, ValidationAcceptsEdgeValues) {
  Scenario s = reference_scenario();
  s.flows_per_ue[1].priority_weight = 1.0;  // closed upper end
  s.num_ues = 1;
  EXPECT_TRUE(validate_scenario(s).empty());
}

}  // namespace
}  // namespace qfsim
