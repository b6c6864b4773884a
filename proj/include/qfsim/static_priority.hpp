#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qfsim/scheduler.hpp"

namespace qfsim {

// Strict-priority baseline: lower priority_level always wins. Flows on
// the same level take turns, least recently served first, so one level is
// a round-robin ring and lower levels starve whenever a higher level can
// fill the grid.
class StaticPriorityScheduler : public Scheduler {
 public:
  std::string_view name() const override { return "static-priority"; }

  Allocation schedule(const SchedulerInput& in) override {
    if (last_served_.size() < in.flows->size()) {
      last_served_.resize(in.flows->size(), 0);
    }
    std::vector<const FlowState*> order;
    order.reserve(in.flows->size());
    // The scalar rank only reflects the level; recency is a tiebreak.
    std::vector<double> metrics(in.flows->size(), 0.0);
    for (const FlowState& f : *in.flows) {
      if (f.queued_bytes <= 0) continue;
      metrics[static_cast<std::size_t>(f.flow_id)] =
          -static_cast<double>(f.profile.priority_level);
      order.push_back(&f);
    }
    std::sort(order.begin(), order.end(),
              [this](const FlowState* x, const FlowState* y) {
                if (x->profile.priority_level != y->profile.priority_level) {
                  return x->profile.priority_level < y->profile.priority_level;
                }
                const std::uint64_t sx = seq_of(x), sy = seq_of(y);
                if (sx != sy) return sx < sy;
                return x->flow_id < y->flow_id;
              });
    Allocation alloc = greedy_allocate(in, order);
    alloc.metrics = std::move(metrics);
    for (const FlowState* f : order) {
      if (alloc.grants[static_cast<std::size_t>(f->flow_id)].bytes > 0) {
        last_served_[static_cast<std::size_t>(f->flow_id)] = ++serve_counter_;
      }
    }
    return alloc;
  }

 private:
  std::uint64_t seq_of(const FlowState* f) const {
    return last_served_[static_cast<std::size_t>(f->flow_id)];
  }

  std::vector<std::uint64_t> last_served_;
  std::uint64_t serve_counter_ = 0;
};

}  // namespace qfsim
