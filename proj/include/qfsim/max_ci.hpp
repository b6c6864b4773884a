#pragma once

#include <algorithm>
#include <vector>

#include "qfsim/scheduler.hpp"

namespace qfsim {

// Throughput-maximizing baseline: backlogged flows ranked purely by the
// instantaneous PRB payload of their UE. Flows on weak links are served
// only with whatever the strong links leave over.
class MaxCiScheduler : public Scheduler {
 public:
  std::string_view name() const override { return "max-ci"; }

  Allocation schedule(const SchedulerInput& in) override {
    std::vector<const FlowState*> order;
    order.reserve(in.flows->size());
    std::vector<double> metrics(in.flows->size(), 0.0);
    for (const FlowState& f : *in.flows) {
      if (f.queued_bytes <= 0) continue;
      metrics[static_cast<std::size_t>(f.flow_id)] =
          in.grid->bits_per_prb(f.ue_id);
      order.push_back(&f);
    }
    std::sort(order.begin(), order.end(),
              [&in](const FlowState* x, const FlowState* y) {
                const double bx = in.grid->bits_per_prb(x->ue_id);
                const double by = in.grid->bits_per_prb(y->ue_id);
                if (bx != by) return bx > by;
                return x->flow_id < y->flow_id;
              });
    Allocation alloc = greedy_allocate(in, order);
    alloc.metrics = std::move(metrics);
    return alloc;
  }
};

}  // namespace qfsim
