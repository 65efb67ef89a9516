#include "dcloud/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace dcloud {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_number(std::string_view token, double& value) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

bool parse_integer(std::string_view token, std::int64_t& value) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Stable by submit time; ids re-densified afterwards.
void sort_and_renumber(Workload& w) {
  std::stable_sort(w.jobs.begin(), w.jobs.end(),
                   [](const Job& a, const Job& b) { return a.submit_time < b.submit_time; });
  for (std::size_t i = 0; i < w.jobs.size(); ++i) w.jobs[i].id = static_cast<JobId>(i);
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error([&] {
        std::string msg = "workload validation failed:";
        for (const auto& v : violations) {
          msg += " [" + v.rule + " job " + std::to_string(v.job) + ": " + v.detail + "]";
        }
        return msg;
      }()),
      violations_(std::move(violations)) {}

Workload parse_swf(std::istream& in, std::string name) {
  Workload w;
  w.kind = WorkloadKind::Htc;
  w.source.name = std::move(name);
  NodeCount header_scale = 0;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == ';') {
      // "; MaxProcs: 128"
      auto rest = trim(body.substr(1));
      for (std::string_view key : {"MaxProcs:", "MaxNodes:"}) {
        if (rest.substr(0, key.size()) == key) {
          std::int64_t v = 0;
          if (parse_integer(trim(rest.substr(key.size())), v) && v > 0) {
            // MaxProcs wins over MaxNodes; demands are in processors.
            if (key == "MaxProcs:" || header_scale == 0) header_scale = v;
          }
        }
      }
      continue;
    }
    auto fields = split_ws(body);
    if (fields.size() != 18) {
      throw ParseError(lineno, "expected 18 fields, found " + std::to_string(fields.size()));
    }
    double values[18];
    for (std::size_t f = 0; f < 18; ++f) {
      if (!parse_number(fields[f], values[f])) {
        throw ParseError(lineno, "field " + std::to_string(f + 1) + " is not numeric: '" +
                                     std::string(fields[f]) + "'");
      }
    }
    const double submit = values[1];
    const double runtime = values[3];
    double procs = values[7];
    if (procs < 0) procs = values[4];
    const auto whole_runtime = static_cast<SimTime>(std::trunc(runtime));
    const auto whole_procs = static_cast<NodeCount>(std::trunc(procs));
    if (whole_runtime <= 0 || whole_procs < 1 || submit < 0) {
      ++w.skipped_lines;
      continue;
    }
    Job job;
    job.submit_time = static_cast<SimTime>(std::trunc(submit));
    job.runtime = whole_runtime;
    job.nodes = whole_procs;
    job.trace_id = std::string(fields[0]);
    w.jobs.push_back(std::move(job));
  }
  sort_and_renumber(w);
  w.source.original_scale = header_scale > 0 ? header_scale : w.max_nodes();
  return w;
}

void write_swf(std::ostream& out, const Workload& w) {
  out << "; Version: 2.2\n";
  out << "; MaxProcs: " << w.source.original_scale << "\n";
  for (const auto& j : w.jobs) {
    const auto number = j.trace_id.empty() ? std::to_string(j.id + 1) : j.trace_id;
    out << number << ' ' << j.submit_time << " -1 " << j.runtime << ' ' << j.nodes << " -1 -1 "
        << j.nodes << " -1 -1 1 -1 -1 -1 -1 -1 -1 -1\n";
  }
}

Workload parse_dag(std::istream& in, std::string name) {
  Workload w;
  w.kind = WorkloadKind::Mtc;
  w.source.name = std::move(name);
  std::unordered_map<std::string, JobId> ids;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = line.find('#') == std::string::npos ? std::string_view(line)
                                                     : std::string_view(line).substr(0, line.find('#'));
    auto fields = split_ws(body);
    if (fields.empty()) continue;
    if (fields[0] == "TASK") {
      if (fields.size() != 4) throw ParseError(lineno, "TASK needs <id> <runtime> <nodes>");
      double runtime = 0;
      std::int64_t nodes = 0;
      if (!parse_number(fields[2], runtime)) throw ParseError(lineno, "runtime is not numeric");
      if (!parse_integer(fields[3], nodes)) throw ParseError(lineno, "nodes is not an integer");
      const auto whole = static_cast<SimTime>(std::trunc(runtime));
      if (whole <= 0) throw ParseError(lineno, "task runtime must be at least one second");
      if (nodes < 1) throw ParseError(lineno, "task needs at least one node");
      std::string id(fields[1]);
      if (ids.count(id) != 0) throw ParseError(lineno, "duplicate task " + id);
      Job job;
      job.id = static_cast<JobId>(w.jobs.size());
      job.runtime = whole;
      job.nodes = nodes;
      job.workflow_id = 0;
      job.trace_id = id;
      ids.emplace(std::move(id), job.id);
      w.jobs.push_back(std::move(job));
    } else if (fields[0] == "EDGE") {
      if (fields.size() != 3) throw ParseError(lineno, "EDGE needs <parent> <child>");
      auto parent = ids.find(std::string(fields[1]));
      if (parent == ids.end()) throw ParseError(lineno, "undeclared task " + std::string(fields[1]));
      auto child = ids.find(std::string(fields[2]));
      if (child == ids.end()) throw ParseError(lineno, "undeclared task " + std::string(fields[2]));
      auto& deps = w.jobs[child->second].deps;
      if (std::find(deps.begin(), deps.end(), parent->second) == deps.end()) {
        deps.push_back(parent->second);
      }
    } else {
      throw ParseError(lineno, "unknown directive '" + std::string(fields[0]) + "'");
    }
  }
  w.source.original_scale = w.max_nodes();
  auto violations = validate_workload(w);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return w;
}

void write_dag(std::ostream& out, const Workload& w) {
  auto name_of = [&](JobId id) {
    const auto& t = w.jobs[id].trace_id;
    return t.empty() ? "t" + std::to_string(id) : t;
  };
  for (const auto& j : w.jobs) out << "TASK " << name_of(j.id) << ' ' << j.runtime << ' ' << j.nodes << '\n';
  for (const auto& j : w.jobs) {
    for (auto dep : j.deps) out << "EDGE " << name_of(dep) << ' ' << name_of(j.id) << '\n';
  }
}

Workload scale_trace(const Workload& w, NodeCount target_nodes) {
  if (target_nodes < 1) throw std::invalid_argument("scale_trace: target_nodes must be >= 1");
  const NodeCount original = w.source.original_scale > 0 ? w.source.original_scale : w.max_nodes();
  if (original < 1) throw std::invalid_argument("scale_trace: workload has no machine scale");
  Workload out = w;
  for (auto& j : out.jobs) {
    // round(nodes * target / original), half-up, in integer arithmetic
    const NodeCount scaled = (2 * j.nodes * target_nodes + original) / (2 * original);
    j.nodes = std::max<NodeCount>(1, scaled);
  }
  out.source.scale_factor = w.source.scale_factor * static_cast<double>(target_nodes) / static_cast<double>(original);
  out.source.original_scale = target_nodes;
  return out;
}

Workload slice_trace(const Workload& w, const TraceSlice& slice) {
  if (slice.duration <= 0) throw std::invalid_argument("slice_trace: duration must be > 0");
  Workload out;
  out.kind = w.kind;
  out.source = w.source;
  out.skipped_lines = w.skipped_lines;
  std::vector<JobId> remap(w.jobs.size(), kNoJob);
  for (const auto& j : w.jobs) {
    if (j.submit_time < slice.start_offset || j.submit_time >= slice.start_offset + slice.duration) continue;
    remap[j.id] = static_cast<JobId>(out.jobs.size());
    Job copy = j;
    copy.submit_time -= slice.start_offset;
    out.jobs.push_back(std::move(copy));
  }
  for (auto& j : out.jobs) {
    j.id = remap[j.id];
    std::vector<JobId> deps;
    for (auto d : j.deps) {
      if (d < remap.size() && remap[d] != kNoJob) deps.push_back(remap[d]);
    }
    j.deps = std::move(deps);
  }
  return out;
}

Workload load_workload_file(const std::string& path, WorkloadKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open workload file " + path);
  auto name = path.substr(path.find_last_of('/') == std::string::npos ? 0 : path.find_last_of('/') + 1);
  return kind == WorkloadKind::Htc ? parse_swf(in, name) : parse_dag(in, name);
}

}  // namespace dcloud
