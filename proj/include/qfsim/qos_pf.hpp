#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qfsim/scenario.hpp"
#include "qfsim/scheduler.hpp"

namespace qfsim {

// Deadline pressure of the head-of-line packet, normalized to [0, 1].
// The ratio bound / (bound - waited) grows without limit as the deadline
// nears, so it is clamped at `delay_urgency_cap` and divided back down;
// a flow without a deadline, or with nothing queued, has zero urgency.
inline double delay_urgency(const FlowState& f, const TtiClock& now,
                            const SchedulerConfig& cfg) {
  if (!f.profile.delay_bound_ns || f.queue.empty()) return 0.0;
  const double bound = static_cast<double>(*f.profile.delay_bound_ns);
  const double waited =
      static_cast<double>(f.head_wait_ttis(now.index) * now.tti_ns);
  const double slack =
      std::max(static_cast<double>(cfg.epsilon_time_ns), bound - waited);
  const double ratio = std::min(cfg.delay_urgency_cap, bound / slack);
  return ratio / cfg.delay_urgency_cap;
}

// Relative shortfall of the averaged rate against the guaranteed rate;
// zero for non-GBR flows and for flows at or above their guarantee.
inline double gbr_deficit(const FlowState& f) {
  if (!f.profile.gbr_bps) return 0.0;
  return std::max(0.0, 1.0 - f.avg_throughput_bps / *f.profile.gbr_bps);
}

inline double composite_utility(const FlowState& f, const TtiClock& now,
                                const SchedulerConfig& cfg) {
  const double a = f.profile.alpha.value_or(cfg.alpha);
  const double b = f.profile.beta.value_or(cfg.beta);
  const double g = f.profile.gamma.value_or(cfg.gamma);
  return a * delay_urgency(f, now, cfg) + b * gbr_deficit(f) +
         g * effective_priority_weight(f.profile);
}

// Utility over averaged throughput: the proportional-fair form, with the
// numerator replaced by the composite QoS utility.
inline double pf_metric(const FlowState& f, const TtiClock& now,
                        const SchedulerConfig& cfg) {
  const double denom =
      std::max(f.avg_throughput_bps, cfg.throughput_floor_bps);
  return composite_utility(f, now, cfg) / denom;
}

// Per-TTI averaged-rate update, applied to every flow whether or not it
// was served. The floor keeps the PF denominator strictly positive.
inline void update_ema(FlowState& f, std::int64_t served_bits,
                       const SchedulerConfig& cfg, double tti_seconds) {
  const double a = 1.0 / static_cast<double>(cfg.ema_window_ttis);
  const double inst = static_cast<double>(served_bits) / tti_seconds;
  f.avg_throughput_bps = (1.0 - a) * f.avg_throughput_bps + a * inst;
  if (f.avg_throughput_bps < cfg.throughput_floor_bps) {
    f.avg_throughput_bps = cfg.throughput_floor_bps;
  }
}

class QosPfScheduler : public Scheduler {
 public:
  explicit QosPfScheduler(SchedulerConfig cfg) : cfg_(cfg) {}

  std::string_view name() const override { return "qos-pf"; }

  Allocation schedule(const SchedulerInput& in) override {
    struct Ranked {
      const FlowState* flow;
      double metric;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(in.flows->size());
    std::vector<double> metrics(in.flows->size(), 0.0);
    for (const FlowState& f : *in.flows) {
      if (f.queued_bytes <= 0) continue;
      const double m = pf_metric(f, in.tti, cfg_);
      metrics[static_cast<std::size_t>(f.flow_id)] = m;
      ranked.push_back({&f, m});
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const Ranked& x, const Ranked& y) {
                if (x.metric != y.metric) return x.metric > y.metric;
                if (x.flow->profile.priority_level !=
                    y.flow->profile.priority_level) {
                  return x.flow->profile.priority_level <
                         y.flow->profile.priority_level;
                }
                return x.flow->flow_id < y.flow->flow_id;
              });
    std::vector<const FlowState*> order;
    order.reserve(ranked.size());
    for (const Ranked& r : ranked) order.push_back(r.flow);
    Allocation alloc = greedy_allocate(in, order);
    alloc.metrics = std::move(metrics);
    return alloc;
  }

 private:
  SchedulerConfig cfg_;
};

}  // namespace qfsim
