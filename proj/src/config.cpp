#include "dcloud/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dcloud/ingest.hpp"
#include "dcloud/synth.hpp"

namespace dcloud {

namespace {

struct Section {
  std::string type;  // scenario | workload | sweep | tco_dcs | tco_ssp
  std::string name;
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::pair<std::string, std::size_t>>> entries;  // key -> (value, line)
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void schema_error(std::size_t line, const std::string& msg) {
  throw ConfigError(kExitConfig, "config line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> words(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string w;
  while (in >> w) {
    // Allow comma separated lists as well.
    std::size_t start = 0;
    for (std::size_t i = 0; i <= w.size(); ++i) {
      if (i == w.size() || w[i] == ',') {
        if (i > start) out.push_back(w.substr(start, i - start));
        start = i + 1;
      }
    }
  }
  return out;
}

std::int64_t to_int(const std::string& v, std::size_t line, const std::string& key) {
  std::int64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) schema_error(line, key + ": expected an integer, got '" + v + "'");
  return out;
}

double to_double(const std::string& v, std::size_t line, const std::string& key) {
  if (v == "inf" || v == "+inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) schema_error(line, key + ": expected a number, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& v, std::size_t line, const std::string& key) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  schema_error(line, key + ": expected true/false, got '" + v + "'");
}

// "10 20 30" or "10:80:10" (inclusive range).
std::vector<double> number_list(const std::string& v, std::size_t line, const std::string& key) {
  std::vector<double> out;
  for (const auto& w : words(v)) {
    const auto c1 = w.find(':');
    if (c1 == std::string::npos) {
      out.push_back(to_double(w, line, key));
      continue;
    }
    const auto c2 = w.find(':', c1 + 1);
    if (c2 == std::string::npos) schema_error(line, key + ": range needs start:stop:step");
    const double lo = to_double(w.substr(0, c1), line, key);
    const double hi = to_double(w.substr(c1 + 1, c2 - c1 - 1), line, key);
    const double step = to_double(w.substr(c2 + 1), line, key);
    if (!(step > 0) || hi < lo) schema_error(line, key + ": empty or invalid range");
    // Count steps in integers so 1.0:2.0:0.1 yields exactly 11 values.
    const auto n = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::int64_t i = 0; i <= n; ++i) {
      out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9);
    }
  }
  if (out.empty()) schema_error(line, key + ": empty list");
  return out;
}

std::vector<Section> split_sections(const std::string& text) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    auto line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') schema_error(lineno, "unterminated section header");
      const auto inner = words(line.substr(1, line.size() - 2));
      if (inner.empty() || inner.size() > 2) schema_error(lineno, "section header needs a type and optional name");
      Section s;
      s.type = inner[0];
      s.name = inner.size() == 2 ? inner[1] : "";
      s.line = lineno;
      sections.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) schema_error(lineno, "expected key = value");
    if (sections.empty()) schema_error(lineno, "key outside of a section");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) schema_error(lineno, "empty key");
    for (const auto& [k, v] : sections.back().entries) {
      if (k == key) schema_error(lineno, "duplicate key '" + key + "'");
    }
    sections.back().entries.push_back({key, {value, lineno}});
  }
  return sections;
}

void check_keys(const Section& s, const std::set<std::string>& allowed) {
  for (const auto& [key, v] : s.entries) {
    if (allowed.count(key) == 0) {
      schema_error(v.second, "unknown key '" + key + "' in [" + s.type + (s.name.empty() ? "" : " " + s.name) + "]");
    }
  }
}

TcoInput parse_tco(const Section& s) {
  check_keys(s, {"capex", "depreciation_months", "maintenance_total", "energy_space_monthly", "instance_count",
                 "hours_per_month", "price_per_instance_hour", "inbound_gb_per_month", "price_per_gb"});
  TcoInput t;
  std::map<std::string, double*> fields = {{"capex", &t.capex},
                                           {"depreciation_months", &t.depreciation_months},
                                           {"maintenance_total", &t.maintenance_total},
                                           {"energy_space_monthly", &t.energy_space_monthly},
                                           {"instance_count", &t.instance_count},
                                           {"hours_per_month", &t.hours_per_month},
                                           {"price_per_instance_hour", &t.price_per_instance_hour},
                                           {"inbound_gb_per_month", &t.inbound_gb_per_month},
                                           {"price_per_gb", &t.price_per_gb}};
  for (const auto& [key, v] : s.entries) {
    const double x = to_double(v.first, v.second, key);
    if (x < 0) schema_error(v.second, key + " must be non-negative");
    *fields.at(key) = x;
  }
  if (t.depreciation_months < 1) schema_error(s.line, "depreciation_months must be >= 1");
  return t;
}

}  // namespace

LoadedConfig parse_config(const std::string& text, const std::string& base_dir) {
  LoadedConfig cfg;
  auto& run = cfg.run;
  auto& sc = cfg.scenario;
  std::vector<std::pair<SweepSpec, std::size_t>> sweeps;
  bool saw_scenario = false;

  for (const auto& s : split_sections(text)) {
    if (s.type == "scenario") {
      if (saw_scenario) schema_error(s.line, "duplicate [scenario] section");
      saw_scenario = true;
      check_keys(s, {"name", "pool_capacity", "lease_quantum", "setup_cost_per_node", "models", "strict_scan", "seed",
                     "livelock_limit"});
      for (const auto& [key, v] : s.entries) {
        const auto& [value, line] = v;
        if (key == "name") {
          sc.name = value;
        } else if (key == "pool_capacity") {
          if (value != "unbounded") {
            sc.pool_capacity = to_int(value, line, key);
            if (*sc.pool_capacity < 1) schema_error(line, "pool_capacity must be >= 1 or 'unbounded'");
          }
        } else if (key == "lease_quantum") {
          sc.lease_quantum = to_int(value, line, key);
          if (sc.lease_quantum < 1) schema_error(line, "lease_quantum must be >= 1");
        } else if (key == "setup_cost_per_node") {
          sc.setup_cost_per_node = to_double(value, line, key);
          if (sc.setup_cost_per_node < 0) schema_error(line, "setup_cost_per_node must be >= 0");
        } else if (key == "models") {
          for (const auto& w : words(value)) {
            auto m = parse_model_kind(w);
            if (!m) schema_error(line, "unknown model '" + w + "' (DCS, SSP, DRP, DSP)");
            run.models.push_back(*m);
          }
        } else if (key == "strict_scan") {
          run.strict_scan = to_bool(value, line, key);
        } else if (key == "seed") {
          run.seed = static_cast<std::uint64_t>(to_int(value, line, key));
        } else if (key == "livelock_limit") {
          const auto n = to_int(value, line, key);
          if (n < 1) schema_error(line, "livelock_limit must be >= 1");
          run.livelock_limit = static_cast<std::size_t>(n);
        }
      }
    } else if (s.type == "workload") {
      if (s.name.empty()) schema_error(s.line, "[workload] needs a name");
      for (const auto& w : cfg.workloads) {
        if (w.name == s.name) schema_error(s.line, "duplicate workload '" + s.name + "'");
      }
      check_keys(s, {"kind", "trace", "generator", "original_scale", "target_nodes", "slice_start", "slice_duration",
                     "window", "start_offset", "fixed_size", "B", "R", "scan_interval", "idle_check_interval"});
      WorkloadSpec w;
      w.name = s.name;
      std::optional<std::string> window_value;
      std::optional<SimTime> scan, idle;
      NodeCount b = 0;
      double r = 0;
      bool has_b = false, has_r = false, has_kind = false;
      std::size_t window_line = s.line;
      for (const auto& [key, v] : s.entries) {
        const auto& [value, line] = v;
        if (key == "kind") {
          has_kind = true;
          if (value == "htc") {
            w.kind = WorkloadKind::Htc;
          } else if (value == "mtc") {
            w.kind = WorkloadKind::Mtc;
          } else {
            schema_error(line, "kind must be htc or mtc");
          }
        } else if (key == "trace") {
          w.trace = (std::filesystem::path(base_dir) / value).lexically_normal().string();
        } else if (key == "generator") {
          if (value != "nasa" && value != "blue" && value != "montage") {
            schema_error(line, "generator must be nasa, blue or montage");
          }
          w.generator = value;
        } else if (key == "original_scale") {
          w.original_scale = to_int(value, line, key);
          if (*w.original_scale < 1) schema_error(line, "original_scale must be >= 1");
        } else if (key == "target_nodes") {
          w.target_nodes = to_int(value, line, key);
          if (*w.target_nodes < 1) schema_error(line, "target_nodes must be >= 1");
        } else if (key == "slice_start") {
          w.slice_start = to_int(value, line, key);
          if (*w.slice_start < 0) schema_error(line, "slice_start must be >= 0");
        } else if (key == "slice_duration") {
          w.slice_duration = to_int(value, line, key);
          if (*w.slice_duration < 1) schema_error(line, "slice_duration must be >= 1");
        } else if (key == "window") {
          window_value = value;
          window_line = line;
        } else if (key == "start_offset") {
          w.start_offset = to_int(value, line, key);
          if (w.start_offset < 0) schema_error(line, "start_offset must be >= 0");
        } else if (key == "fixed_size") {
          w.fixed_size = to_int(value, line, key);
          if (w.fixed_size < 1) schema_error(line, "fixed_size must be >= 1");
        } else if (key == "B") {
          b = to_int(value, line, key);
          has_b = true;
          if (b < 1) schema_error(line, "B must be >= 1");
        } else if (key == "R") {
          r = to_double(value, line, key);
          has_r = true;
          if (!(r > 0)) schema_error(line, "R must be > 0");
        } else if (key == "scan_interval") {
          scan = to_int(value, line, key);
          if (*scan < 1) schema_error(line, "scan_interval must be >= 1");
        } else if (key == "idle_check_interval") {
          idle = to_int(value, line, key);
          if (*idle < 1) schema_error(line, "idle_check_interval must be >= 1");
        }
      }
      if (!has_kind) schema_error(s.line, "workload '" + w.name + "' needs kind = htc|mtc");
      if (w.trace.empty() == w.generator.empty()) {
        schema_error(s.line, "workload '" + w.name + "' needs exactly one of trace or generator");
      }
      const bool sliced = w.slice_start || w.slice_duration;
      if (sliced && w.kind == WorkloadKind::Mtc) schema_error(s.line, "slicing applies to HTC traces only");
      if (!window_value) {
        w.window_mode = sliced ? WindowMode::Slice : WindowMode::Auto;
      } else if (*window_value == "auto") {
        w.window_mode = WindowMode::Auto;
      } else if (*window_value == "slice") {
        if (!w.slice_duration) schema_error(window_line, "window = slice needs slice_duration");
        w.window_mode = WindowMode::Slice;
      } else {
        w.window_mode = WindowMode::Fixed;
        w.window = to_int(*window_value, window_line, "window");
        if (w.window < 0) schema_error(window_line, "window must be >= 0");
      }
      if (w.window_mode == WindowMode::Slice && !w.slice_duration) {
        schema_error(s.line, "slice_start without slice_duration");
      }
      w.params = w.kind == WorkloadKind::Htc ? PolicyParams::htc(has_b ? b : 1, has_r ? r : 1.0)
                                             : PolicyParams::mtc(has_b ? b : 1, has_r ? r : 1.0);
      if (scan) w.params.scan_interval = *scan;
      if (idle) w.params.idle_check_interval = *idle;
      w.params.validate();
      cfg.workloads.push_back(std::move(w));
    } else if (s.type == "sweep") {
      if (s.name.empty()) schema_error(s.line, "[sweep] needs the workload name");
      check_keys(s, {"B", "R"});
      SweepSpec sw;
      sw.workload = s.name;
      for (const auto& [key, v] : s.entries) {
        const auto values = number_list(v.first, v.second, key);
        if (key == "B") {
          for (double x : values) {
            if (x < 1 || x != std::floor(x)) schema_error(v.second, "B values must be integers >= 1");
            sw.initial_nodes.push_back(static_cast<NodeCount>(x));
          }
        } else {
          for (double x : values) {
            if (!(x > 0)) schema_error(v.second, "R values must be > 0");
          }
          sw.threshold_ratios = values;
        }
      }
      if (sw.initial_nodes.empty() || sw.threshold_ratios.empty()) {
        schema_error(s.line, "[sweep " + s.name + "] needs non-empty B and R lists");
      }
      sweeps.push_back({std::move(sw), s.line});
    } else if (s.type == "tco_dcs") {
      run.tco_dcs = parse_tco(s);
    } else if (s.type == "tco_ssp") {
      run.tco_ssp = parse_tco(s);
    } else {
      schema_error(s.line, "unknown section [" + s.type + "]");
    }
  }

  for (auto& [sw, line] : sweeps) {
    bool found = false;
    for (const auto& w : cfg.workloads) found = found || w.name == sw.workload;
    if (!found) schema_error(line, "sweep references unknown workload '" + sw.workload + "'");
    run.sweeps.push_back(std::move(sw));
  }
  if (run.models.empty()) run.models = {ModelKind::Dcs, ModelKind::Ssp, ModelKind::Drp, ModelKind::Dsp};
  for (auto m : run.models) {
    if (m == ModelKind::Drp && sc.pool_capacity) {
      throw ConfigError(kExitConfig, "DRP runs need pool_capacity = unbounded");
    }
    if (m == ModelKind::Dcs || m == ModelKind::Ssp) {
      for (const auto& w : cfg.workloads) {
        if (w.fixed_size < 1) {
          throw ConfigError(kExitConfig, "workload '" + w.name + "' needs fixed_size for " + std::string(to_string(m)));
        }
      }
    }
  }
  return cfg;
}

Workload load_workload(const WorkloadSpec& spec, std::uint64_t seed) {
  Workload w;
  if (!spec.generator.empty()) {
    if (spec.generator == "montage") {
      w = generate_montage(MontageShape{}, seed);
    } else {
      w = generate_htc_trace(spec.generator == "nasa" ? nasa_ipsc_shape() : sdsc_blue_shape(), seed);
    }
  } else {
    w = load_workload_file(spec.trace, spec.kind);
  }
  if (w.kind != spec.kind) throw std::runtime_error(spec.name + ": workload kind does not match the file");
  w.source.name = spec.name;
  if (spec.original_scale) w.source.original_scale = *spec.original_scale;
  if (spec.target_nodes) w = scale_trace(w, *spec.target_nodes);
  if (spec.slice_start || spec.slice_duration) {
    TraceSlice slice;
    slice.start_offset = spec.slice_start.value_or(0);
    if (spec.slice_duration) slice.duration = *spec.slice_duration;
    w = slice_trace(w, slice);
  }
  return w;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(kExitMissingConfig, "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto base = std::filesystem::path(path).parent_path().string();
  auto cfg = parse_config(buf.str(), base.empty() ? "." : base);
  cfg.run.config_path = path;

  for (const auto& spec : cfg.workloads) {
    if (!spec.trace.empty() && !std::filesystem::exists(spec.trace)) {
      throw ConfigError(kExitIngest, "workload '" + spec.name + "': trace file not found: " + spec.trace);
    }
  }
  for (const auto& spec : cfg.workloads) {
    TreEntry e;
    e.name = spec.name;
    try {
      e.workload = load_workload(spec, cfg.run.seed);
    } catch (const ParseError& err) {
      throw ConfigError(kExitIngest, spec.name + ": " + err.what());
    } catch (const ValidationError& err) {
      throw ConfigError(kExitIngest, spec.name + ": " + err.what());
    } catch (const std::runtime_error& err) {
      throw ConfigError(kExitIngest, spec.name + ": " + err.what());
    }
    e.fixed_size = spec.fixed_size;
    e.params = spec.params;
    e.start_offset = spec.start_offset;
    switch (spec.window_mode) {
      case WindowMode::Slice: e.window = *spec.slice_duration; break;
      case WindowMode::Fixed: e.window = spec.window; break;
      case WindowMode::Auto: break;
    }
    e.model = ModelKind::Dsp;
    cfg.scenario.entries.push_back(std::move(e));
  }
  return cfg;
}

}  // namespace dcloud
