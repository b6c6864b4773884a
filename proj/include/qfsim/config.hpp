#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfsim/scenario.hpp"

namespace qfsim {

// Raised on malformed config text; the message lists every problem found,
// one per line, each prefixed with the 1-based line number where known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace config_detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string strip_comment(const std::string& s) {
  const auto pos = s.find_first_of("#;");
  return pos == std::string::npos ? s : s.substr(0, pos);
}

inline std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string fmt_seconds(Nanos ns) {
  return fmt_double(nanos_to_seconds(ns));
}

struct RawSection {
  std::string name;
  int line = 0;
  // key -> (value, line); insertion order preserved separately for flows
  std::map<std::string, std::pair<std::string, int>> kv;
};

// Typed accessors over one section. Every get marks its key as consumed;
// keys nobody asked for are reported as unknown, so a misspelled knob
// fails loudly instead of silently falling back to a default.
class SectionReader {
 public:
  SectionReader(RawSection* raw, std::vector<std::string>* errors)
      : raw_(raw), errors_(errors) {}

  bool has(const std::string& key) const { return raw_->kv.count(key) > 0; }

  void get_int(const std::string& key, auto& out) {
    if (auto v = take(key)) {
      std::int64_t parsed = 0;
      if (parse_int(v->first, parsed)) {
        out = static_cast<std::remove_reference_t<decltype(out)>>(parsed);
      } else {
        fail(v->second, key + ": expected an integer, got '" + v->first + "'");
      }
    }
  }

  void get_double(const std::string& key, double& out) {
    if (auto v = take(key)) {
      double parsed = 0;
      if (parse_double(v->first, parsed)) {
        out = parsed;
      } else {
        fail(v->second, key + ": expected a number, got '" + v->first + "'");
      }
    }
  }

  void get_opt_double(const std::string& key, std::optional<double>& out) {
    double tmp = 0;
    bool present = has(key);
    get_double(key, tmp);
    if (present) out = tmp;
  }

  void get_opt_int(const std::string& key, std::optional<std::int64_t>& out) {
    std::int64_t tmp = 0;
    bool present = has(key);
    get_int(key, tmp);
    if (present) out = tmp;
  }

  // Durations are written in seconds and stored in integer nanoseconds.
  void get_seconds(const std::string& key, Nanos& out) {
    if (auto v = take(key)) {
      double parsed = 0;
      if (parse_double(v->first, parsed)) {
        out = seconds_to_nanos(parsed);
      } else {
        fail(v->second, key + ": expected seconds, got '" + v->first + "'");
      }
    }
  }

  void get_opt_seconds(const std::string& key, std::optional<Nanos>& out) {
    Nanos tmp = 0;
    bool present = has(key);
    get_seconds(key, tmp);
    if (present) out = tmp;
  }

  void get_enum(const std::string& key,
                const std::vector<std::pair<std::string, int>>& names,
                auto& out) {
    if (auto v = take(key)) {
      for (const auto& [name, value] : names) {
        if (v->first == name) {
          out = static_cast<std::remove_reference_t<decltype(out)>>(value);
          return;
        }
      }
      std::string allowed;
      for (const auto& [name, value] : names) {
        if (!allowed.empty()) allowed += "|";
        allowed += name;
      }
      fail(v->second, key + ": expected one of " + allowed + ", got '" +
                          v->first + "'");
    }
  }

  void finish() {
    for (const auto& [key, vl] : raw_->kv) {
      if (!consumed_.count(key)) {
        fail(vl.second, "unknown key '" + key + "' in [" + raw_->name + "]");
      }
    }
  }

 private:
  std::optional<std::pair<std::string, int>> take(const std::string& key) {
    consumed_.insert(key);
    const auto it = raw_->kv.find(key);
    if (it == raw_->kv.end()) return std::nullopt;
    return it->second;
  }

  static bool parse_int(const std::string& s, std::int64_t& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    const auto res = std::from_chars(b, e, out);
    return res.ec == std::errc() && res.ptr == e;
  }

  static bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    const auto res = std::from_chars(b, e, out);
    return res.ec == std::errc() && res.ptr == e;
  }

  void fail(int line, const std::string& msg) {
    errors_->push_back("line " + std::to_string(line) + ": " + msg);
  }

  RawSection* raw_;
  std::vector<std::string>* errors_;
  std::set<std::string> consumed_;
};

}  // namespace config_detail

// Parses the INI scenario format. Sections: [scenario], [channel],
// [scheduler], and one [flow.<role>] per traffic class (instantiated on
// every UE, in file order). Unset keys keep their defaults; unknown keys
// and unknown sections are errors.
inline Scenario parse_scenario_text(const std::string& text) {
  using config_detail::RawSection;
  using config_detail::SectionReader;
  using config_detail::strip_comment;
  using config_detail::trim;

  std::vector<std::string> errors;
  std::vector<RawSection> sections;
  {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    RawSection* cur = nullptr;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string body = trim(strip_comment(line));
      if (body.empty()) continue;
      if (body.front() == '[') {
        if (body.back() != ']') {
          errors.push_back("line " + std::to_string(lineno) +
                           ": unterminated section header");
          cur = nullptr;
          continue;
        }
        sections.push_back(
            RawSection{trim(body.substr(1, body.size() - 2)), lineno, {}});
        cur = &sections.back();
        continue;
      }
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        errors.push_back("line " + std::to_string(lineno) +
                         ": expected 'key = value'");
        continue;
      }
      if (!cur) {
        errors.push_back("line " + std::to_string(lineno) +
                         ": key outside of any section");
        continue;
      }
      const std::string key = trim(body.substr(0, eq));
      const std::string value = trim(body.substr(eq + 1));
      if (key.empty()) {
        errors.push_back("line " + std::to_string(lineno) + ": empty key");
        continue;
      }
      if (!cur->kv.emplace(key, std::make_pair(value, lineno)).second) {
        errors.push_back("line " + std::to_string(lineno) +
                         ": duplicate key '" + key + "' in [" + cur->name +
                         "]");
      }
    }
  }

  Scenario s;
  s.flows_per_ue.clear();
  bool seen_scenario = false, seen_channel = false, seen_scheduler = false;
  std::set<std::string> seen_roles;

  for (RawSection& raw : sections) {
    SectionReader r(&raw, &errors);
    if (raw.name == "scenario") {
      if (seen_scenario) {
        errors.push_back("line " + std::to_string(raw.line) +
                         ": duplicate [scenario] section");
      }
      seen_scenario = true;
      r.get_int("num_ues", s.num_ues);
      r.get_double("sim_duration", s.sim_duration_s);
      r.get_double("cell_capacity", s.cell_capacity_bps);
      r.get_int("num_prbs", s.num_prbs);
      r.get_int("seed", s.seed);
      r.get_enum("start_offsets",
                 {{"uniform", static_cast<int>(OffsetPolicy::kUniform)},
                  {"zero", static_cast<int>(OffsetPolicy::kZero)}},
                 s.start_offsets);
      r.get_seconds("tti_duration", s.tti_ns);
      r.get_int("buffer_capacity", s.buffer_packets);
      r.finish();
    } else if (raw.name == "channel") {
      if (seen_channel) {
        errors.push_back("line " + std::to_string(raw.line) +
                         ": duplicate [channel] section");
      }
      seen_channel = true;
      r.get_enum(
          "variation",
          {{"none", static_cast<int>(ChannelVariation::kNone)},
           {"static_per_ue", static_cast<int>(ChannelVariation::kStaticPerUe)},
           {"block_fading", static_cast<int>(ChannelVariation::kBlockFading)}},
          s.channel.variation);
      r.get_double("multiplier_lo", s.channel.multiplier_lo);
      r.get_double("multiplier_hi", s.channel.multiplier_hi);
      r.get_int("block_length", s.channel.block_length_ttis);
      r.finish();
    } else if (raw.name == "scheduler") {
      if (seen_scheduler) {
        errors.push_back("line " + std::to_string(raw.line) +
                         ": duplicate [scheduler] section");
      }
      seen_scheduler = true;
      r.get_double("alpha", s.sched.alpha);
      r.get_double("beta", s.sched.beta);
      r.get_double("gamma", s.sched.gamma);
      r.get_int("ema_window", s.sched.ema_window_ttis);
      r.get_double("delay_urgency_cap", s.sched.delay_urgency_cap);
      r.get_seconds("epsilon_time", s.sched.epsilon_time_ns);
      r.get_double("throughput_floor", s.sched.throughput_floor_bps);
      r.get_seconds("gbr_window", s.sched.gbr_window_ns);
      r.finish();
    } else if (raw.name.rfind("flow.", 0) == 0) {
      QfiProfile p;
      p.role = raw.name.substr(5);
      if (p.role.empty()) {
        errors.push_back("line " + std::to_string(raw.line) +
                         ": flow section needs a role: [flow.<role>]");
      }
      if (!seen_roles.insert(p.role).second) {
        errors.push_back("line " + std::to_string(raw.line) +
                         ": duplicate section [" + raw.name + "]");
      }
      r.get_int("qfi", p.qfi);
      r.get_int("five_qi", p.five_qi);
      r.get_enum("arrival",
                 {{"periodic", static_cast<int>(ArrivalKind::kPeriodic)},
                  {"variable_video",
                   static_cast<int>(ArrivalKind::kVariableVideo)}},
                 p.arrival);
      r.get_int("packet_size", p.packet_size_bytes);
      r.get_seconds("period", p.period_ns);
      r.get_seconds("frame_interval", p.frame_interval_ns);
      r.get_int("burst_min", p.burst_min);
      r.get_int("burst_max", p.burst_max);
      r.get_opt_seconds("delay_bound", p.delay_bound_ns);
      r.get_opt_double("gbr", p.gbr_bps);
      r.get_int("priority_level", p.priority_level);
      r.get_opt_double("priority_weight", p.priority_weight);
      r.get_opt_double("alpha", p.alpha);
      r.get_opt_double("beta", p.beta);
      r.get_opt_double("gamma", p.gamma);
      r.get_opt_double("rate_cap", p.rate_cap_bps);
      r.get_opt_int("buffer_capacity", p.buffer_packets);
      r.finish();
      s.flows_per_ue.push_back(std::move(p));
    } else {
      errors.push_back("line " + std::to_string(raw.line) +
                       ": unknown section [" + raw.name + "]");
    }
  }

  if (!errors.empty()) {
    std::string joined;
    for (const std::string& e : errors) {
      if (!joined.empty()) joined += "\n";
      joined += e;
    }
    throw ConfigError(joined);
  }
  return s;
}

inline Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

// Canonical text form; parsing it back yields a Scenario equal to the
// input on every field.
inline std::string scenario_to_config(const Scenario& s) {
  using config_detail::fmt_double;
  using config_detail::fmt_seconds;
  std::ostringstream out;
  out << "[scenario]\n";
  out << "num_ues = " << s.num_ues << "\n";
  out << "sim_duration = " << fmt_double(s.sim_duration_s) << "\n";
  out << "cell_capacity = " << fmt_double(s.cell_capacity_bps) << "\n";
  out << "num_prbs = " << s.num_prbs << "\n";
  out << "seed = " << s.seed << "\n";
  out << "start_offsets = "
      << (s.start_offsets == OffsetPolicy::kUniform ? "uniform" : "zero")
      << "\n";
  out << "tti_duration = " << fmt_seconds(s.tti_ns) << "\n";
  out << "buffer_capacity = " << s.buffer_packets << "\n";

  out << "\n[channel]\n";
  const char* variation = "none";
  if (s.channel.variation == ChannelVariation::kStaticPerUe) {
    variation = "static_per_ue";
  } else if (s.channel.variation == ChannelVariation::kBlockFading) {
    variation = "block_fading";
  }
  out << "variation = " << variation << "\n";
  out << "multiplier_lo = " << fmt_double(s.channel.multiplier_lo) << "\n";
  out << "multiplier_hi = " << fmt_double(s.channel.multiplier_hi) << "\n";
  out << "block_length = " << s.channel.block_length_ttis << "\n";

  out << "\n[scheduler]\n";
  out << "alpha = " << fmt_double(s.sched.alpha) << "\n";
  out << "beta = " << fmt_double(s.sched.beta) << "\n";
  out << "gamma = " << fmt_double(s.sched.gamma) << "\n";
  out << "ema_window = " << s.sched.ema_window_ttis << "\n";
  out << "delay_urgency_cap = " << fmt_double(s.sched.delay_urgency_cap)
      << "\n";
  out << "epsilon_time = " << fmt_seconds(s.sched.epsilon_time_ns) << "\n";
  out << "throughput_floor = " << fmt_double(s.sched.throughput_floor_bps)
      << "\n";
  out << "gbr_window = " << fmt_seconds(s.sched.gbr_window_ns) << "\n";

  for (const QfiProfile& p : s.flows_per_ue) {
    out << "\n[flow." << p.role << "]\n";
    out << "qfi = " << p.qfi << "\n";
    out << "five_qi = " << p.five_qi << "\n";
    out << "arrival = "
        << (p.arrival == ArrivalKind::kPeriodic ? "periodic"
                                                : "variable_video")
        << "\n";
    out << "packet_size = " << p.packet_size_bytes << "\n";
    if (p.arrival == ArrivalKind::kPeriodic) {
      out << "period = " << fmt_seconds(p.period_ns) << "\n";
    } else {
      out << "frame_interval = " << fmt_seconds(p.frame_interval_ns) << "\n";
      out << "burst_min = " << p.burst_min << "\n";
      out << "burst_max = " << p.burst_max << "\n";
    }
    if (p.delay_bound_ns) {
      out << "delay_bound = " << fmt_seconds(*p.delay_bound_ns) << "\n";
    }
    if (p.gbr_bps) out << "gbr = " << fmt_double(*p.gbr_bps) << "\n";
    out << "priority_level = " << p.priority_level << "\n";
    if (p.priority_weight) {
      out << "priority_weight = " << fmt_double(*p.priority_weight) << "\n";
    }
    if (p.alpha) out << "alpha = " << fmt_double(*p.alpha) << "\n";
    if (p.beta) out << "beta = " << fmt_double(*p.beta) << "\n";
    if (p.gamma) out << "gamma = " << fmt_double(*p.gamma) << "\n";
    if (p.rate_cap_bps) {
      out << "rate_cap = " << fmt_double(*p.rate_cap_bps) << "\n";
    }
    if (p.buffer_packets) {
      out << "buffer_capacity = " << *p.buffer_packets << "\n";
    }
  }
  return out.str();
}

inline void save_scenario_file(const std::filesystem::path& path,
                               const Scenario& s) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config file: " + path.string());
  out << scenario_to_config(s);
}

}  // namespace qfsim
