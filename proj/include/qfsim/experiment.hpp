#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfsim/config.hpp"
#include "qfsim/metrics.hpp"
#include "qfsim/presets.hpp"
#include "qfsim/simulation.hpp"

namespace qfsim {

struct ExperimentPlan {
  Scenario scenario;
  std::vector<std::string> schedulers = {"qos-pf", "max-ci",
                                         "static-priority"};
  int runs = 20;
  std::uint64_t base_seed = 0;  // 0: use scenario.seed
  std::filesystem::path out_dir;  // empty: keep results in memory only

  std::uint64_t effective_seed() const {
    return base_seed != 0 ? base_seed
                          : static_cast<std::uint64_t>(scenario.seed);
  }
};

struct SchedulerBatch {
  std::string scheduler;
  std::vector<RunReport> runs;
  AggregateReport aggregate;
};

namespace csv_detail {

inline std::string fmt(double v) { return config_detail::fmt_double(v); }

inline std::string fmt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string("na");
}

inline std::ofstream open_csv(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write output file: " + path.string());
  }
  return out;
}

}  // namespace csv_detail

// One row per flow. This output is a pure function of (scenario,
// scheduler, seed): it contains no wall-clock quantity, so identical
// inputs yield byte-identical text.
inline void write_flows_csv(std::ostream& out, const RunReport& r) {
  out << "flow_id,ue_id,role,arrived,departed,dropped,residual,"
         "delivered_bytes,throughput_bps,delivered_fraction,mean_delay_ms,"
         "p95_delay_ms,late,violation_ratio,gbr_satisfaction\n";
  for (const FlowKpis& k : r.flows) {
    out << k.flow_id << ',' << k.ue_id << ',' << k.role << ','
        << k.packets_arrived << ',' << k.packets_departed << ','
        << k.packets_dropped << ',' << k.packets_residual << ','
        << k.delivered_bytes << ',' << csv_detail::fmt(k.throughput_bps)
        << ',' << csv_detail::fmt(k.delivered_fraction) << ','
        << csv_detail::fmt(k.mean_delay_ms) << ','
        << csv_detail::fmt(k.p95_delay_ms) << ',' << k.late_departures << ','
        << csv_detail::fmt(k.violation_ratio) << ','
        << csv_detail::fmt(k.gbr_satisfaction) << '\n';
  }
}

inline void write_flows_csv(const std::filesystem::path& path,
                            const RunReport& r) {
  auto out = csv_detail::open_csv(path);
  write_flows_csv(out, r);
}

// One row per scheduler x KPI; the KPI key's leading segment is the
// traffic class ("all" for cell-wide figures).
inline void write_aggregate_csv(const std::filesystem::path& path,
                                std::span<const SchedulerBatch> batches) {
  auto out = csv_detail::open_csv(path);
  out << "scheduler,class,kpi,mean,ci95_half,runs\n";
  for (const SchedulerBatch& b : batches) {
    for (const auto& [key, st] : b.aggregate.kpis) {
      const auto dot = key.find('.');
      out << b.scheduler << ',' << key.substr(0, dot) << ','
          << key.substr(dot + 1) << ',' << csv_detail::fmt(st.mean) << ','
          << csv_detail::fmt(st.ci95_half) << ',' << st.n << '\n';
    }
  }
}

inline SchedulerBatch run_batch_scheduler(const Scenario& s,
                                          const std::string& scheduler_id,
                                          int runs, std::uint64_t base_seed) {
  SchedulerBatch batch;
  batch.scheduler = scheduler_id;
  batch.runs.reserve(static_cast<std::size_t>(runs));
  for (int r = 0; r < runs; ++r) {
    // Fresh policy instance per run: policies may carry cross-TTI state.
    const auto sched = make_scheduler(scheduler_id, s);
    batch.runs.push_back(
        run_single(s, *sched, base_seed + static_cast<std::uint64_t>(r)));
  }
  batch.aggregate = aggregate_runs(batch.runs);
  return batch;
}

// Runs every scheduler in the plan over the same seed block (shared
// arrival and channel realizations) and, when an output directory is
// set, writes out/<scheduler>/<seed>/flows.csv plus out/aggregate.csv.
inline std::vector<SchedulerBatch> run_batch(const ExperimentPlan& plan) {
  std::vector<SchedulerBatch> batches;
  for (const std::string& id : plan.schedulers) {
    batches.push_back(run_batch_scheduler(plan.scenario, id, plan.runs,
                                          plan.effective_seed()));
  }
  if (!plan.out_dir.empty()) {
    for (const SchedulerBatch& b : batches) {
      for (const RunReport& r : b.runs) {
        write_flows_csv(plan.out_dir / b.scheduler / std::to_string(r.seed) /
                            "flows.csv",
                        r);
      }
    }
    write_aggregate_csv(plan.out_dir / "aggregate.csv", batches);
  }
  return batches;
}

struct SensitivityRow {
  WeightPreset weights;
  AggregateReport aggregate;
};

// Re-runs the composite-utility policy under each weight preset, holding
// scenario, seeds, and traffic fixed so differences are attributable to
// the weights alone.
inline std::vector<SensitivityRow> sensitivity_sweep(
    const ExperimentPlan& plan,
    const std::vector<WeightPreset>& presets = weight_presets()) {
  std::vector<SensitivityRow> rows;
  for (const WeightPreset& w : presets) {
    Scenario s = plan.scenario;
    s.sched.alpha = w.alpha;
    s.sched.beta = w.beta;
    s.sched.gamma = w.gamma;
    SensitivityRow row;
    row.weights = w;
    row.aggregate =
        run_batch_scheduler(s, "qos-pf", plan.runs, plan.effective_seed())
            .aggregate;
    rows.push_back(std::move(row));
  }
  if (!plan.out_dir.empty()) {
    auto out = csv_detail::open_csv(plan.out_dir / "sensitivity.csv");
    out << "config,alpha,beta,gamma,class,kpi,mean,ci95_half,runs\n";
    for (const SensitivityRow& row : rows) {
      for (const auto& [key, st] : row.aggregate.kpis) {
        const auto dot = key.find('.');
        out << row.weights.name << ',' << csv_detail::fmt(row.weights.alpha)
            << ',' << csv_detail::fmt(row.weights.beta) << ','
            << csv_detail::fmt(row.weights.gamma) << ','
            << key.substr(0, dot) << ',' << key.substr(dot + 1) << ','
            << csv_detail::fmt(st.mean) << ',' << csv_detail::fmt(st.ci95_half)
            << ',' << st.n << '\n';
      }
    }
  }
  return rows;
}

struct ScalabilityRow {
  int ues = 0;
  double mean_runtime_ms = 0.0;  // mean over runs of per-run mean decision
  double p99_runtime_ms = 0.0;   // mean over runs of per-run p99 decision
};

// Scales the UE count while keeping per-UE traffic and the grid fixed,
// measuring only the decision cost of the composite-utility policy.
inline std::vector<ScalabilityRow> scalability_sweep(
    const ExperimentPlan& plan, const std::vector<int>& ue_counts) {
  std::vector<ScalabilityRow> rows;
  for (int ues : ue_counts) {
    Scenario s = plan.scenario;
    s.num_ues = ues;
    const SchedulerBatch batch =
        run_batch_scheduler(s, "qos-pf", plan.runs, plan.effective_seed());
    ScalabilityRow row;
    row.ues = ues;
    double mean_sum = 0.0, p99_sum = 0.0;
    for (const RunReport& r : batch.runs) {
      mean_sum += r.sched_mean_us / 1e3;
      p99_sum += r.sched_p99_us / 1e3;
    }
    row.mean_runtime_ms = mean_sum / static_cast<double>(batch.runs.size());
    row.p99_runtime_ms = p99_sum / static_cast<double>(batch.runs.size());
    rows.push_back(row);
  }
  if (!plan.out_dir.empty()) {
    auto out = csv_detail::open_csv(plan.out_dir / "scalability.csv");
    out << "ues,mean_runtime,p99_runtime\n";  // runtimes in milliseconds
    for (const ScalabilityRow& row : rows) {
      out << row.ues << ',' << csv_detail::fmt(row.mean_runtime_ms) << ','
          << csv_detail::fmt(row.p99_runtime_ms) << '\n';
    }
  }
  return rows;
}

// Console rendering shared by `run`, `compare`, and `report`.
inline void print_aggregate_table(std::ostream& os,
                                  std::span<const SchedulerBatch> batches) {
  static constexpr const char* kRows[] = {
      "control.mean_delay_ms",      "control.p95_delay_ms",
      "control.violation_pct",      "sensor.gbr_satisfaction_pct",
      "sensor.mean_delay_ms",       "video.throughput_mbps",
      "all.throughput_mbps",        "all.jain_delivered",
      "all.jain_throughput",        "all.sched_mean_us",
      "all.sched_p99_us",
  };
  os << std::left << std::setw(30) << "kpi";
  for (const SchedulerBatch& b : batches) {
    os << std::setw(24) << b.scheduler;
  }
  os << "\n";
  for (const char* key : kRows) {
    bool any = false;
    for (const SchedulerBatch& b : batches) {
      if (b.aggregate.kpis.count(key)) any = true;
    }
    if (!any) continue;
    os << std::left << std::setw(30) << key;
    for (const SchedulerBatch& b : batches) {
      const auto it = b.aggregate.kpis.find(key);
      if (it == b.aggregate.kpis.end()) {
        os << std::setw(24) << "na";
        continue;
      }
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(3) << it->second.mean;
      if (it->second.n >= 2 && std::isfinite(it->second.ci95_half)) {
        cell << " +/- " << std::setprecision(3) << it->second.ci95_half;
      }
      os << std::setw(24) << cell.str();
    }
    os << "\n";
  }
}

}  // namespace qfsim
