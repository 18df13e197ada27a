#pragma once

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmirv/executor.hpp"
#include "mmirv/parser.hpp"

namespace mmirv {

struct RunConfig {
  enum class Format { Text, Json };

  std::vector<std::string> inputs;
  std::optional<std::string> function_filter;
  bool emit_trace = false;
  Format format = Format::Text;
  size_t max_paths = 10000;
};

struct ReportRow {
  std::string function;
  bool verified = false;
  size_t paths = 0;
  size_t skipped_unwind = 0;
  std::optional<std::pair<Loc, VerifyError>> failure;
  bool max_paths_hit = false;
  nlohmann::json trace;  // null unless tracing
};

struct Report {
  std::vector<ReportRow> rows;  // sorted by function name
  size_t total_verified = 0;
  size_t total_failed = 0;
  size_t total_skipped_unwind = 0;
  long long wall_ms = 0;

  bool any_max_paths_hit() const {
    for (const auto& r : rows)
      if (r.max_paths_hit) return true;
    return false;
  }
};

namespace detail {

inline nlohmann::json state_json(const SymbolicState& s) {
  nlohmann::json store = nlohmann::json::object();
  for (const auto& [k, v] : s.store) store[k] = v.to_string();
  nlohmann::json heap = nlohmann::json::array();
  for (const auto& c : s.heap.render_sorted()) heap.push_back(c);
  nlohmann::json pc = nlohmann::json::array();
  for (const auto& f : s.pc.facts()) pc.push_back(f.to_string());
  if (!s.pc.consistent()) pc.push_back("false");
  return nlohmann::json{{"store", store}, {"heap", heap}, {"pc", pc}};
}

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Ongoing:
      return "ongoing";
    case Outcome::Verified:
      return "verified";
    case Outcome::Failed:
      return "failed";
    case Outcome::Pruned:
      return "pruned";
    case Outcome::SkippedUnwind:
      return "skipped-unwind";
  }
  return "?";
}

/// Flattens the path tree into one step list per root-to-leaf path.
inline void collect_paths(const PathNode& node, std::vector<nlohmann::json>& prefix,
                          nlohmann::json& paths) {
  nlohmann::json step = {{"block", node.block},
                         {"step", node.step_index},
                         {"action", node.action},
                         {"state", state_json(node.state)}};
  if (node.outcome != Outcome::Ongoing) step["outcome"] = outcome_name(node.outcome);
  if (node.error) step["error"] = node.error->to_string();
  prefix.push_back(step);
  if (node.children.empty()) {
    paths.push_back(nlohmann::json(prefix));
  } else {
    for (const auto& c : node.children) collect_paths(*c, prefix, paths);
  }
  prefix.pop_back();
}

inline nlohmann::json trace_json(const VerificationResult& r) {
  nlohmann::json paths = nlohmann::json::array();
  if (r.tree) {
    std::vector<nlohmann::json> prefix;
    collect_paths(*r.tree, prefix, paths);
  }
  return paths;
}

inline std::string loc_string(const Loc& l) {
  return std::to_string(l.line) + ":" + std::to_string(l.col);
}

}  // namespace detail

inline ReportRow summarize(const VerificationResult& r, bool with_trace) {
  ReportRow row;
  row.function = r.function;
  row.verified = r.status == VerificationResult::Status::Verified && !r.max_paths_hit;
  row.paths = r.paths_explored;
  row.skipped_unwind = r.skipped_unwind;
  row.failure = r.first_failure;
  row.max_paths_hit = r.max_paths_hit;
  if (with_trace) row.trace = detail::trace_json(r);
  return row;
}

inline Report assemble_report(std::vector<ReportRow> rows, long long wall_ms) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return a.function < b.function; });
  Report rep;
  rep.rows = std::move(rows);
  rep.wall_ms = wall_ms;
  for (const auto& r : rep.rows) {
    if (r.verified) ++rep.total_verified;
    else ++rep.total_failed;
    rep.total_skipped_unwind += r.skipped_unwind;
  }
  return rep;
}

/// Renders the report. Text: one line per function plus first-failure
/// detail. Json: stable field names, sorted keys, newline-terminated.
inline std::string render_report(const Report& rep, RunConfig::Format format) {
  if (format == RunConfig::Format::Text) {
    std::ostringstream out;
    for (const auto& r : rep.rows) {
      out << r.function << ": " << (r.verified ? "VERIFIED" : "FAILED") << " (" << r.paths
          << " paths)\n";
      if (r.skipped_unwind > 0) out << "  " << r.skipped_unwind << " unwind path(s) skipped\n";
      if (r.max_paths_hit) out << "  exploration aborted: max paths exceeded\n";
      if (r.failure)
        out << "  first failure at " << detail::loc_string(r.failure->first) << ": "
            << r.failure->second.to_string() << "\n";
    }
    out << "total: " << rep.total_verified << " verified, " << rep.total_failed << " failed, "
        << rep.total_skipped_unwind << " unwind-skipped (" << rep.wall_ms << " ms)\n";
    return out.str();
  }

  nlohmann::json functions = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    nlohmann::json row = {{"function", r.function},
                          {"status", r.verified ? "verified" : "failed"},
                          {"paths", r.paths}};
    if (r.skipped_unwind > 0) row["skipped_unwind"] = r.skipped_unwind;
    if (r.failure)
      row["failure"] = {{"location", detail::loc_string(r.failure->first)},
                        {"kind", VerifyError::kind_name(r.failure->second.kind)},
                        {"detail", r.failure->second.detail}};
    if (!r.trace.is_null()) row["trace"] = r.trace;
    functions.push_back(row);
  }
  nlohmann::json j = {{"functions", functions},
                      {"totals",
                       {{"verified", rep.total_verified},
                        {"failed", rep.total_failed},
                        {"skipped_unwind", rep.total_skipped_unwind}}},
                      {"wall_ms", rep.wall_ms}};
  return j.dump(2) + "\n";
}

/// Exit code policy: 0 all verified, 1 at least one verification failure,
/// 2 parse/validation/input error or aborted exploration.
inline int exit_code(const Report& rep) {
  if (rep.any_max_paths_hit()) return 2;
  return rep.total_failed > 0 ? 1 : 0;
}

/// Parses, validates and verifies every input, printing the report to
/// `out` and diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.inputs.empty()) {
    err << "error: no input files\n";
    return 2;
  }
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<Program, std::string>> programs;
  for (const auto& path : cfg.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      err << path << ": error: cannot open file\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    ParseResult pr = parse_program({path, buf.str()});
    if (!pr.ok()) {
      for (const auto& d : pr.diagnostics) err << path << ":" << d.to_string() << "\n";
      return 2;
    }
    programs.emplace_back(std::move(*pr.program), path);
  }

  std::vector<ReportRow> rows;
  uint64_t task = 0;
  for (const auto& [program, path] : programs) {
    for (const auto& f : program.functions) {
      ++task;
      if (cfg.function_filter && f.name != *cfg.function_filter) continue;
      ExecOptions opts;
      opts.trace = cfg.emit_trace;
      opts.max_paths = cfg.max_paths;
      VerificationResult r = verify_function(program, f, opts, task << 32);
      rows.push_back(summarize(r, cfg.emit_trace));
    }
  }

  auto t1 = std::chrono::steady_clock::now();
  Report rep = assemble_report(
      std::move(rows), std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
  out << render_report(rep, cfg.format);
  return exit_code(rep);
}

}  // namespace mmirv
