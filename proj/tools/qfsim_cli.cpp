// Command-line front end: scenario validation, batch runs, weight and
// scale sweeps, and rendering of previously written result directories.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfsim/qfsim.hpp"

namespace {

namespace fs = std::filesystem;

qfsim::Scenario load_or_die(const std::string& path) {
  try {
    return qfsim::load_scenario_file(path);
  } catch (const qfsim::ConfigError& e) {
    std::cerr << "error: " << path << ":\n" << e.what() << "\n";
    std::exit(2);
  }
}

// Parse + semantic validation; exits unless the scenario is runnable.
qfsim::Scenario load_valid_or_die(const std::string& path) {
  qfsim::Scenario s = load_or_die(path);
  const auto errs = qfsim::validate_scenario(s);
  if (!errs.empty()) {
    std::cerr << "error: " << path << " is not runnable:\n";
    for (const auto& e : errs) std::cerr << "  " << e << "\n";
    std::exit(1);
  }
  return s;
}

int cmd_validate(const std::string& path) {
  const qfsim::Scenario s = load_or_die(path);
  const auto errs = qfsim::validate_scenario(s);
  if (!errs.empty()) {
    std::cout << "invalid: " << errs.size() << " problem(s)\n";
    for (const auto& e : errs) std::cout << "  " << e << "\n";
    return 1;
  }
  std::cout << "ok: " << s.num_ues << " UEs x " << s.flows_per_ue_count()
            << " flows, " << s.total_ttis() << " TTIs\n";
  double offered = 0.0;
  for (const qfsim::QfiProfile& p : s.flows_per_ue) {
    const auto a = qfsim::make_arrival_process(p, 0, 0, s.start_offsets);
    const double class_bps = qfsim::offered_load_bps(a) * s.num_ues;
    offered += class_bps;
    std::cout << "  " << std::left << std::setw(12) << p.role << std::fixed
              << std::setprecision(3) << class_bps / 1e6 << " Mbps offered\n";
  }
  std::cout << "  total offered " << std::fixed << std::setprecision(3)
            << offered / 1e6 << " Mbps vs cell capacity "
            << s.cell_capacity_bps / 1e6 << " Mbps\n";
  return 0;
}

// Creates missing parent directories, then opens for writing or throws.
void open_or_die(std::ofstream& out, const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  out.open(path);
  if (!out.is_open()) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
}

struct TraceFiles {
  std::string arrivals;
  std::string channel;
  std::string decisions;

  bool any() const {
    return !arrivals.empty() || !channel.empty() || !decisions.empty();
  }
};

// Builds the observer backing --dump-*: one CSV row per arrived packet,
// per (TTI, UE) channel state, and per nonzero grant.
struct TraceWriter {
  std::ofstream arrivals, channel, decisions;
  std::string scheduler;
  qfsim::TtiObserver observer;

  TraceWriter(const TraceFiles& files, std::string scheduler_name)
      : scheduler(std::move(scheduler_name)) {
    if (!files.arrivals.empty()) {
      open_or_die(arrivals, files.arrivals);
      arrivals << "tti,flow_id,packet_size\n";
      observer.on_arrivals = [this](const qfsim::TtiClock& tti,
                                    std::span<const qfsim::Packet> pkts) {
        for (const auto& p : pkts) {
          arrivals << tti.index << ',' << p.flow_id << ',' << p.size_bytes
                   << '\n';
        }
      };
    }
    const bool want_channel = !files.channel.empty();
    const bool want_decisions = !files.decisions.empty();
    if (want_channel) {
      open_or_die(channel, files.channel);
      channel << "tti,ue_id,bits_per_prb\n";
    }
    if (want_decisions) {
      open_or_die(decisions, files.decisions);
      decisions << "tti,scheduler,flow_id,metric,prbs,bytes\n";
    }
    if (want_channel || want_decisions) {
      observer.on_allocation = [this, want_channel, want_decisions](
                                   const qfsim::TtiClock& tti,
                                   const std::vector<qfsim::FlowState>& flows,
                                   const qfsim::ResourceGrid& grid,
                                   const qfsim::Allocation& alloc) {
        if (want_channel) {
          for (std::size_t ue = 0; ue < grid.bits_per_prb_by_ue.size();
               ++ue) {
            channel << tti.index << ',' << ue << ','
                    << qfsim::config_detail::fmt_double(
                           grid.bits_per_prb_by_ue[ue])
                    << '\n';
          }
        }
        if (want_decisions) {
          for (std::size_t i = 0; i < alloc.grants.size(); ++i) {
            if (alloc.grants[i].bytes == 0) continue;
            const double m = i < alloc.metrics.size() ? alloc.metrics[i] : 0.0;
            decisions << tti.index << ',' << scheduler << ','
                      << flows[i].flow_id << ','
                      << qfsim::config_detail::fmt_double(m) << ','
                      << alloc.grants[i].prbs << ',' << alloc.grants[i].bytes
                      << '\n';
          }
        }
      };
    }
  }
};

int cmd_run(const std::string& path, const std::string& scheduler, int runs,
            std::uint64_t seed, const std::string& out,
            const TraceFiles& traces) {
  qfsim::ExperimentPlan plan;
  plan.scenario = load_valid_or_die(path);
  plan.schedulers = {scheduler};
  plan.runs = runs;
  plan.base_seed = seed;
  plan.out_dir = out;

  if (traces.any()) {
    if (runs != 1) {
      std::cerr << "error: --dump-* requires --runs 1\n";
      return 2;
    }
    TraceWriter tracer(traces, scheduler);
    const auto sched = qfsim::make_scheduler(scheduler, plan.scenario);
    const qfsim::RunReport r = qfsim::run_single(
        plan.scenario, *sched, plan.effective_seed(), &tracer.observer);
    qfsim::SchedulerBatch batch;
    batch.scheduler = scheduler;
    batch.runs = {r};
    batch.aggregate = qfsim::aggregate_runs(batch.runs);
    if (!plan.out_dir.empty()) {
      qfsim::write_flows_csv(
          plan.out_dir / scheduler / std::to_string(r.seed) / "flows.csv", r);
    }
    qfsim::print_aggregate_table(std::cout, {&batch, 1});
    return 0;
  }

  const auto batches = qfsim::run_batch(plan);
  qfsim::print_aggregate_table(std::cout, batches);
  return 0;
}

int cmd_compare(const std::string& path, std::vector<std::string> schedulers,
                int runs, std::uint64_t seed, const std::string& out) {
  qfsim::ExperimentPlan plan;
  plan.scenario = load_valid_or_die(path);
  plan.schedulers = std::move(schedulers);
  plan.runs = runs;
  plan.base_seed = seed;
  plan.out_dir = out;
  const auto batches = qfsim::run_batch(plan);
  qfsim::print_aggregate_table(std::cout, batches);
  return 0;
}

int cmd_sweep_weights(const std::string& path, int runs, std::uint64_t seed,
                      const std::string& out) {
  qfsim::ExperimentPlan plan;
  plan.scenario = load_valid_or_die(path);
  plan.runs = runs;
  plan.base_seed = seed;
  plan.out_dir = out;
  const auto rows = qfsim::sensitivity_sweep(plan);
  for (const auto& row : rows) {
    std::cout << "== " << row.weights.name << " (alpha=" << row.weights.alpha
              << " beta=" << row.weights.beta
              << " gamma=" << row.weights.gamma << ") ==\n";
    qfsim::SchedulerBatch b;
    b.scheduler = "qos-pf";
    b.aggregate = row.aggregate;
    qfsim::print_aggregate_table(std::cout, {&b, 1});
    std::cout << "\n";
  }
  return 0;
}

int cmd_sweep_scale(const std::string& path, std::vector<int> ues, int runs,
                    std::uint64_t seed, const std::string& out) {
  qfsim::ExperimentPlan plan;
  plan.scenario = load_valid_or_die(path);
  plan.runs = runs;
  plan.base_seed = seed;
  plan.out_dir = out;
  const auto rows = qfsim::scalability_sweep(plan, ues);
  std::cout << std::left << std::setw(8) << "ues" << std::setw(20)
            << "mean_runtime_ms" << std::setw(20) << "p99_runtime_ms"
            << "\n";
  for (const auto& row : rows) {
    std::cout << std::left << std::setw(8) << row.ues << std::fixed
              << std::setprecision(4) << std::setw(20) << row.mean_runtime_ms
              << std::setw(20) << row.p99_runtime_ms << "\n";
  }
  return 0;
}

// Rounds a fractional CSV cell for table display; integers and non-numeric
// cells pass through unchanged.
std::string round_cell(const std::string& cell, int places) {
  if (cell.find_first_of(".eE") == std::string::npos) return cell;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0') return cell;
  std::ostringstream os;
  os << std::fixed << std::setprecision(places) << v;
  return os.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_report(const std::string& dir) {
  bool printed = false;
  const fs::path aggregate = fs::path(dir) / "aggregate.csv";
  if (fs::exists(aggregate)) {
    // scheduler,class,kpi,mean,ci95_half,runs
    std::map<std::string, qfsim::SchedulerBatch> by_sched;
    std::vector<std::string> order;
    const auto rows = read_csv(aggregate);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() != 6) continue;
      if (!by_sched.count(row[0])) order.push_back(row[0]);
      qfsim::SchedulerBatch& b = by_sched[row[0]];
      b.scheduler = row[0];
      qfsim::Stat st;
      st.mean = std::strtod(row[3].c_str(), nullptr);
      st.ci95_half = std::strtod(row[4].c_str(), nullptr);
      st.n = static_cast<int>(std::strtol(row[5].c_str(), nullptr, 10));
      b.aggregate.kpis[row[1] + "." + row[2]] = st;
    }
    std::vector<qfsim::SchedulerBatch> batches;
    for (const auto& name : order) batches.push_back(by_sched[name]);
    std::cout << "# aggregate (" << aggregate.string() << ")\n";
    qfsim::print_aggregate_table(std::cout, batches);
    printed = true;
  }

  const fs::path sensitivity = fs::path(dir) / "sensitivity.csv";
  if (fs::exists(sensitivity)) {
    std::cout << "\n# sensitivity (" << sensitivity.string() << ")\n";
    static constexpr const char* kKeys[] = {
        "control.mean_delay_ms", "all.jain_delivered", "video.throughput_mbps"};
    const auto rows = read_csv(sensitivity);
    std::cout << std::left << std::setw(18) << "config";
    for (const char* k : kKeys) std::cout << std::setw(26) << k;
    std::cout << "\n";
    std::vector<std::string> order;
    std::map<std::string, std::map<std::string, std::string>> cells;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() != 9) continue;
      if (!cells.count(row[0])) order.push_back(row[0]);
      cells[row[0]][row[4] + "." + row[5]] =
          round_cell(row[6], 3) + " +/- " + round_cell(row[7], 3);
    }
    for (const auto& name : order) {
      std::cout << std::left << std::setw(18) << name;
      for (const char* k : kKeys) {
        const auto it = cells[name].find(k);
        std::cout << std::setw(26)
                  << (it == cells[name].end() ? "na" : it->second);
      }
      std::cout << "\n";
    }
    printed = true;
  }

  const fs::path scalability = fs::path(dir) / "scalability.csv";
  if (fs::exists(scalability)) {
    std::cout << "\n# scalability (" << scalability.string() << ")\n";
    for (const auto& row : read_csv(scalability)) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::cout << std::left << std::setw(18) << round_cell(row[i], 4);
      }
      std::cout << "\n";
    }
    printed = true;
  }

  if (!printed) {
    std::cerr << "error: no result CSVs found under " << dir << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-cell downlink scheduling simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string scheduler = "qos-pf";
  std::vector<std::string> schedulers = {"qos-pf", "max-ci",
                                         "static-priority"};
  std::vector<int> ues = {5, 10, 20, 40};
  int runs = 20;
  std::uint64_t seed = 0;
  TraceFiles traces;

  auto* validate = app.add_subcommand(
      "validate", "Check a scenario config and print its offered load");
  validate->add_option("config", config_path, "scenario config file")
      ->required();

  auto* run = app.add_subcommand(
      "run", "Run one scheduler over a block of seeded repetitions");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--scheduler", scheduler,
                  "qos-pf | max-ci | static-priority")
      ->check(CLI::IsMember({"qos-pf", "max-ci", "static-priority"}));
  run->add_option("--runs", runs, "number of seeded repetitions");
  run->add_option("--seed", seed, "base seed (default: scenario seed)");
  run->add_option("--out", out_dir, "directory for CSV results");
  run->add_option("--dump-arrivals", traces.arrivals,
                  "per-TTI arrival trace CSV (needs --runs 1)");
  run->add_option("--dump-channel", traces.channel,
                  "per-TTI channel trace CSV (needs --runs 1)");
  run->add_option("--dump-decisions", traces.decisions,
                  "per-TTI grant trace CSV (needs --runs 1)");

  auto* compare = app.add_subcommand(
      "compare", "Run several schedulers on identical traffic and channels");
  compare->add_option("config", config_path, "scenario config file")
      ->required();
  compare->add_option("--schedulers", schedulers, "subset to compare")
      ->delimiter(',')
      ->check(CLI::IsMember({"qos-pf", "max-ci", "static-priority"}));
  compare->add_option("--runs", runs, "number of seeded repetitions");
  compare->add_option("--seed", seed, "base seed (default: scenario seed)");
  compare->add_option("--out", out_dir, "directory for CSV results");

  auto* sweep_w = app.add_subcommand(
      "sweep-weights", "Composite-utility weight sensitivity sweep");
  sweep_w->add_option("config", config_path, "scenario config file")
      ->required();
  sweep_w->add_option("--runs", runs, "number of seeded repetitions");
  sweep_w->add_option("--seed", seed, "base seed (default: scenario seed)");
  sweep_w->add_option("--out", out_dir, "directory for CSV results");

  int scale_runs = 3;
  auto* sweep_s = app.add_subcommand(
      "sweep-scale", "Decision-runtime scaling against the UE count");
  sweep_s->add_option("config", config_path, "scenario config file")
      ->required();
  sweep_s->add_option("--ues", ues, "UE counts to sweep")->delimiter(',');
  sweep_s->add_option("--runs", scale_runs, "repetitions per UE count");
  sweep_s->add_option("--seed", seed, "base seed (default: scenario seed)");
  sweep_s->add_option("--out", out_dir, "directory for CSV results");

  std::string report_dir;
  auto* report = app.add_subcommand(
      "report", "Pretty-print result CSVs from an output directory");
  report->add_option("dir", report_dir, "directory with result CSVs")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(config_path);
    if (run->parsed()) {
      return cmd_run(config_path, scheduler, runs, seed, out_dir, traces);
    }
    if (compare->parsed()) {
      return cmd_compare(config_path, schedulers, runs, seed, out_dir);
    }
    if (sweep_w->parsed()) {
      return cmd_sweep_weights(config_path, runs, seed, out_dir);
    }
    if (sweep_s->parsed()) {
      return cmd_sweep_scale(config_path, ues, scale_runs, seed, out_dir);
    }
    if (report->parsed()) return cmd_report(report_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
