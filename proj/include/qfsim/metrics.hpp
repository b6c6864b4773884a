#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfsim/channel.hpp"
#include "qfsim/flow.hpp"
#include "qfsim/scenario.hpp"
#include "qfsim/scheduler.hpp"
#include "qfsim/time.hpp"

namespace qfsim {

// A packet that arrives and departs in the same TTI still occupied the
// system for that whole slot, hence the +1.
inline double packet_delay_seconds(std::int64_t arrival_tti,
                                   std::int64_t departure_tti,
                                   double tti_seconds) {
  return static_cast<double>(departure_tti - arrival_tti + 1) * tti_seconds;
}

// Jain's fairness index: (sum x)^2 / (n * sum x^2), 1 when all shares are
// equal, -> 1/n under total capture. Undefined on empty or all-zero input.
inline std::optional<double> jain_index(std::span<const double> xs) {
  if (xs.empty()) return std::nullopt;
  double sum = 0.0, sum_sq = 0.0;
  for (double x : xs) {
    sum += x;
    sum_sq += x * x;
  }
  if (sum_sq == 0.0) return std::nullopt;
  return sum * sum / (static_cast<double>(xs.size()) * sum_sq);
}

// Two-sided 97.5% Student-t quantile. Exact for df <= 30; above that the
// value of the nearest tabulated df below is used, which slightly widens
// the interval rather than narrowing it.
inline double t_critical_975(int df) {
  static constexpr double kSmallDf[30] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (df < 1) return std::numeric_limits<double>::quiet_NaN();
  if (df <= 30) return kSmallDf[df - 1];
  if (df < 40) return 2.042;
  if (df < 60) return 2.021;
  if (df < 120) return 2.000;
  return 1.980;
}

struct Stat {
  double mean = 0.0;
  double ci95_half = std::numeric_limits<double>::quiet_NaN();
  int n = 0;
};

inline Stat mean_ci95(std::span<const double> xs) {
  Stat st;
  st.n = static_cast<int>(xs.size());
  if (st.n == 0) {
    st.mean = std::numeric_limits<double>::quiet_NaN();
    return st;
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  st.mean = sum / st.n;
  if (st.n < 2) return st;
  double ss = 0.0;
  for (double x : xs) ss += (x - st.mean) * (x - st.mean);
  const double sd = std::sqrt(ss / (st.n - 1));
  st.ci95_half = t_critical_975(st.n - 1) * sd / std::sqrt(st.n);
  return st;
}

// Nearest-rank percentile; input need not be sorted.
inline double percentile(std::vector<double> xs, double p) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(xs.begin(), xs.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(p * static_cast<double>(xs.size())));
  const std::size_t idx = rank == 0 ? 0 : rank - 1;
  return xs[std::min(idx, xs.size() - 1)];
}

struct FlowKpis {
  std::int64_t flow_id = 0;
  int ue_id = 0;
  std::string role;
  std::int64_t packets_arrived = 0;
  std::int64_t packets_departed = 0;
  std::int64_t packets_dropped = 0;
  std::int64_t packets_residual = 0;
  std::int64_t delivered_bytes = 0;
  double throughput_bps = 0.0;
  std::optional<double> delivered_fraction;  // unset when nothing arrived
  std::optional<double> mean_delay_ms;       // over departed packets
  std::optional<double> p95_delay_ms;
  std::int64_t late_departures = 0;
  std::optional<double> violation_ratio;     // (late + dropped) / arrived
  std::optional<double> gbr_satisfaction;    // fraction of good windows
};

struct ClassKpis {
  std::string role;
  std::int64_t packets_arrived = 0;
  std::int64_t packets_departed = 0;
  std::int64_t packets_dropped = 0;
  std::int64_t late_departures = 0;
  std::optional<double> mean_delay_ms;   // pooled over the class
  std::optional<double> p95_delay_ms;
  std::optional<double> violation_ratio;
  std::optional<double> gbr_satisfaction;  // mean over the class's GBR flows
  double throughput_bps = 0.0;             // summed over the class
};

struct RunReport {
  std::string scheduler;
  std::uint64_t seed = 0;
  double duration_s = 0.0;
  std::int64_t total_ttis = 0;
  std::vector<FlowKpis> flows;
  std::map<std::string, ClassKpis> classes;
  // Fairness over per-flow delivered fraction (share of offered bytes each
  // flow actually received): demand-proportional equality scores 1 even
  // when offered loads differ. The raw-throughput variant is reported
  // alongside for reference.
  std::optional<double> jain_delivered;
  std::optional<double> jain_throughput;
  double sched_mean_us = 0.0;
  double sched_p99_us = 0.0;

  // Scalar view used for cross-run aggregation, keyed "<class>.<kpi>" or
  // "all.<kpi>". Undefined per-run values are simply absent.
  std::map<std::string, double> kpi_values() const {
    std::map<std::string, double> out;
    for (const auto& [role, c] : classes) {
      if (c.mean_delay_ms) out[role + ".mean_delay_ms"] = *c.mean_delay_ms;
      if (c.p95_delay_ms) out[role + ".p95_delay_ms"] = *c.p95_delay_ms;
      if (c.violation_ratio) {
        out[role + ".violation_pct"] = 100.0 * *c.violation_ratio;
      }
      if (c.gbr_satisfaction) {
        out[role + ".gbr_satisfaction_pct"] = 100.0 * *c.gbr_satisfaction;
      }
      out[role + ".throughput_mbps"] = c.throughput_bps / 1e6;
    }
    double total_bps = 0.0;
    for (const auto& [role, c] : classes) total_bps += c.throughput_bps;
    out["all.throughput_mbps"] = total_bps / 1e6;
    if (jain_delivered) out["all.jain_delivered"] = *jain_delivered;
    if (jain_throughput) out["all.jain_throughput"] = *jain_throughput;
    out["all.sched_mean_us"] = sched_mean_us;
    out["all.sched_p99_us"] = sched_p99_us;
    return out;
  }
};

// Accumulates departures and per-window served bits during a run and
// folds everything into a RunReport at the end. Owned by the simulation
// loop; policies never see it.
class MetricsCollector {
 public:
  MetricsCollector(const Scenario& s, const std::vector<FlowState>& flows)
      : tti_ns_(s.tti_ns),
        window_ttis_(std::max<std::int64_t>(1, s.sched.gbr_window_ns / s.tti_ns)) {
    per_flow_.resize(flows.size());
    for (std::size_t i = 0; i < flows.size(); ++i) {
      per_flow_[i].bound_ns = flows[i].profile.delay_bound_ns;
      if (flows[i].profile.gbr_bps) {
        per_flow_[i].gbr_window_target_bits =
            *flows[i].profile.gbr_bps *
            nanos_to_seconds(window_ttis_ * tti_ns_);
      }
    }
  }

  void on_departures(std::span<const Packet> departed) {
    for (const Packet& p : departed) {
      PerFlow& pf = per_flow_[static_cast<std::size_t>(p.flow_id)];
      const std::int64_t delay_ttis = p.departure_tti - p.arrival_tti + 1;
      pf.delay_ttis.push_back(delay_ttis);
      if (pf.bound_ns && delay_ttis * tti_ns_ > *pf.bound_ns) ++pf.late;
    }
  }

  void on_tti_end(const TtiClock& tti, const std::vector<FlowState>& flows,
                  const Allocation& alloc) {
    for (std::size_t i = 0; i < flows.size(); ++i) {
      PerFlow& pf = per_flow_[i];
      pf.window_bits += flows[i].bits_served_this_tti;
      if ((tti.index + 1) % window_ttis_ == 0) {
        if (pf.gbr_window_target_bits) {
          ++pf.windows_closed;
          if (static_cast<double>(pf.window_bits) >=
              *pf.gbr_window_target_bits) {
            ++pf.windows_satisfied;
          }
        }
        pf.window_bits = 0;
      }
    }
    decision_us_.push_back(alloc.decision_seconds * 1e6);
  }

  RunReport finalize(const Scenario& s, const std::vector<FlowState>& flows,
                     std::string scheduler_name, std::uint64_t seed) const {
    RunReport r;
    r.scheduler = std::move(scheduler_name);
    r.seed = seed;
    r.total_ttis = s.total_ttis();
    r.duration_s = nanos_to_seconds(r.total_ttis * tti_ns_);

    struct ClassAccum {
      std::vector<double> delays_ms;
      std::int64_t arrived = 0, departed = 0, dropped = 0, late = 0;
      double bps = 0.0;
      std::vector<double> gbr_sats;
    };
    std::map<std::string, ClassAccum> classes;
    std::vector<double> delivered_fracs;
    std::vector<double> throughputs;

    for (std::size_t i = 0; i < flows.size(); ++i) {
      const FlowState& f = flows[i];
      const PerFlow& pf = per_flow_[i];
      FlowKpis k;
      k.flow_id = f.flow_id;
      k.ue_id = f.ue_id;
      k.role = f.profile.role;
      k.packets_arrived = f.packets_arrived;
      k.packets_departed = f.packets_departed;
      k.packets_dropped = f.packets_dropped;
      k.packets_residual = static_cast<std::int64_t>(f.queue.size());
      k.delivered_bytes = f.bits_served / 8;
      k.throughput_bps = static_cast<double>(f.bits_served) / r.duration_s;
      if (f.bytes_arrived > 0) {
        k.delivered_fraction = static_cast<double>(f.bits_served / 8) /
                               static_cast<double>(f.bytes_arrived);
      }
      std::vector<double> delays_ms;
      delays_ms.reserve(pf.delay_ttis.size());
      for (std::int64_t d : pf.delay_ttis) {
        delays_ms.push_back(nanos_to_millis(d * tti_ns_));
      }
      if (!delays_ms.empty()) {
        double sum = 0.0;
        for (double d : delays_ms) sum += d;
        k.mean_delay_ms = sum / static_cast<double>(delays_ms.size());
        k.p95_delay_ms = percentile(delays_ms, 0.95);
      }
      k.late_departures = pf.late;
      if (k.packets_arrived > 0) {
        k.violation_ratio =
            static_cast<double>(pf.late + f.packets_dropped) /
            static_cast<double>(k.packets_arrived);
      }
      if (pf.gbr_window_target_bits && pf.windows_closed > 0) {
        k.gbr_satisfaction = static_cast<double>(pf.windows_satisfied) /
                             static_cast<double>(pf.windows_closed);
      }

      ClassAccum& c = classes[k.role];
      c.arrived += k.packets_arrived;
      c.departed += k.packets_departed;
      c.dropped += k.packets_dropped;
      c.late += pf.late;
      c.bps += k.throughput_bps;
      c.delays_ms.insert(c.delays_ms.end(), delays_ms.begin(),
                         delays_ms.end());
      if (k.gbr_satisfaction) c.gbr_sats.push_back(*k.gbr_satisfaction);
      if (k.delivered_fraction) {
        delivered_fracs.push_back(*k.delivered_fraction);
      }
      throughputs.push_back(k.throughput_bps);
      r.flows.push_back(std::move(k));
    }

    for (auto& [role, c] : classes) {
      ClassKpis ck;
      ck.role = role;
      ck.packets_arrived = c.arrived;
      ck.packets_departed = c.departed;
      ck.packets_dropped = c.dropped;
      ck.late_departures = c.late;
      if (!c.delays_ms.empty()) {
        double sum = 0.0;
        for (double d : c.delays_ms) sum += d;
        ck.mean_delay_ms = sum / static_cast<double>(c.delays_ms.size());
        ck.p95_delay_ms = percentile(c.delays_ms, 0.95);
      }
      if (c.arrived > 0) {
        ck.violation_ratio = static_cast<double>(c.late + c.dropped) /
                             static_cast<double>(c.arrived);
      }
      if (!c.gbr_sats.empty()) {
        double sum = 0.0;
        for (double g : c.gbr_sats) sum += g;
        ck.gbr_satisfaction = sum / static_cast<double>(c.gbr_sats.size());
      }
      ck.throughput_bps = c.bps;
      r.classes.emplace(role, std::move(ck));
    }

    r.jain_delivered = jain_index(delivered_fracs);
    r.jain_throughput = jain_index(throughputs);
    if (!decision_us_.empty()) {
      double sum = 0.0;
      for (double t : decision_us_) sum += t;
      r.sched_mean_us = sum / static_cast<double>(decision_us_.size());
      r.sched_p99_us = percentile(decision_us_, 0.99);
    }
    return r;
  }

 private:
  struct PerFlow {
    std::optional<Nanos> bound_ns;
    std::vector<std::int64_t> delay_ttis;
    std::int64_t late = 0;
    std::optional<double> gbr_window_target_bits;
    std::int64_t window_bits = 0;
    std::int64_t windows_closed = 0;
    std::int64_t windows_satisfied = 0;
  };

  Nanos tti_ns_;
  std::int64_t window_ttis_;
  std::vector<PerFlow> per_flow_;
  std::vector<double> decision_us_;
};

struct AggregateReport {
  std::string scheduler;
  int runs = 0;
  std::map<std::string, Stat> kpis;
};

inline AggregateReport aggregate_runs(std::span<const RunReport> runs) {
  AggregateReport agg;
  if (runs.empty()) return agg;
  agg.scheduler = runs.front().scheduler;
  agg.runs = static_cast<int>(runs.size());
  std::map<std::string, std::vector<double>> samples;
  for (const RunReport& r : runs) {
    for (const auto& [key, value] : r.kpi_values()) {
      samples[key].push_back(value);
    }
  }
  for (const auto& [key, xs] : samples) {
    agg.kpis.emplace(key, mean_ci95(xs));
  }
  return agg;
}

}  // namespace qfsim
