#pragma once

#include <cassert>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfsim/channel.hpp"
#include "qfsim/max_ci.hpp"
#include "qfsim/metrics.hpp"
#include "qfsim/qos_pf.hpp"
#include "qfsim/scenario.hpp"
#include "qfsim/simulation_fwd.hpp"
#include "qfsim/static_priority.hpp"
#include "qfsim/traffic.hpp"

namespace qfsim {

inline constexpr const char* kSchedulerIds[] = {"qos-pf", "max-ci",
                                                "static-priority"};

inline std::unique_ptr<Scheduler> make_scheduler(std::string_view id,
                                                 const Scenario& s) {
  if (id == "qos-pf") return std::make_unique<QosPfScheduler>(s.sched);
  if (id == "max-ci") return std::make_unique<MaxCiScheduler>();
  if (id == "static-priority") {
    return std::make_unique<StaticPriorityScheduler>();
  }
  throw std::invalid_argument("unknown scheduler id: " + std::string(id));
}

// Runs one seeded realization to completion. The TTI loop is: generate
// arrivals, snapshot the grid, ask the policy for an allocation (timed),
// apply it, then advance the rate averages. Only the decision itself is
// wall-clock timed, so reports are bit-identical across replays on the
// same seed while still carrying real runtime figures.
inline RunReport run_single(const Scenario& s, Scheduler& sched,
                            std::uint64_t seed,
                            const TtiObserver* observer = nullptr) {
  std::vector<FlowState> flows = make_flows(s);
  std::vector<ArrivalProcess> processes;
  processes.reserve(flows.size());
  for (const FlowState& f : flows) {
    processes.push_back(
        make_arrival_process(f.profile, f.flow_id, seed, s.start_offsets));
  }
  const ChannelModel channel(s, seed);
  MetricsCollector collector(s, flows);

  const std::int64_t total = s.total_ttis();
  std::vector<Packet> arrival_buf;
  std::vector<Packet> departed_buf;
  for (std::int64_t t = 0; t < total; ++t) {
    const TtiClock clock{t, s.tti_ns};

    for (std::size_t i = 0; i < flows.size(); ++i) {
      arrival_buf.clear();
      arrivals_at(processes[i], clock, arrival_buf);
      if (arrival_buf.empty()) continue;
      if (observer && observer->on_arrivals) {
        observer->on_arrivals(clock, arrival_buf);
      }
      enqueue(flows[i], arrival_buf);
    }

    const ResourceGrid grid = grid_for_tti(channel, t);
    const SchedulerInput input{clock, &flows, &grid};
    const auto t0 = std::chrono::steady_clock::now();
    Allocation alloc = sched.schedule(input);
    const auto t1 = std::chrono::steady_clock::now();
    alloc.decision_seconds = std::chrono::duration<double>(t1 - t0).count();
    assert(alloc.grants.size() == flows.size());
    assert(alloc.total_prbs() <= grid.num_prbs);

    if (observer && observer->on_allocation) {
      observer->on_allocation(clock, flows, grid, alloc);
    }

    departed_buf.clear();
    for (std::size_t i = 0; i < flows.size(); ++i) {
      const Grant& g = alloc.grants[i];
      if (g.bytes > 0) serve(flows[i], g.bytes, t, departed_buf);
    }
    collector.on_departures(departed_buf);

    for (FlowState& f : flows) {
      update_ema(f, f.bits_served_this_tti, s.sched, clock.tti_seconds());
    }
    collector.on_tti_end(clock, flows, alloc);
    for (FlowState& f : flows) f.bits_served_this_tti = 0;
  }
  return collector.finalize(s, flows, std::string(sched.name()), seed);
}

inline RunReport run_single(const Scenario& s, std::string_view scheduler_id,
                            std::uint64_t seed,
                            const TtiObserver* observer = nullptr) {
  const auto sched = make_scheduler(scheduler_id, s);
  return run_single(s, *sched, seed, observer);
}

}  // namespace qfsim
