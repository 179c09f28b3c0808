#include "vvckit/report.hpp"

#include <sys/utsname.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "vvckit/dispatch.hpp"
#include "vvckit/error.hpp"

namespace vvckit {

using nlohmann::json;

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::kIqit: return "iqit";
    case Stage::kMc: return "mc";
    case Stage::kAlf: return "alf";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view s) {
  for (Stage st : kAllStages)
    if (s == stage_name(st)) return st;
  return std::nullopt;
}

bool WorkloadSpec::has(Stage s) const { return std::find(stages.begin(), stages.end(), s) != stages.end(); }

void WorkloadSpec::validate() const {
  if (width < 1 || height < 1) throw ConfigError("width and height must be positive");
  if (width > 16384 || height > 16384) throw ConfigError("width and height must not exceed 16384");
  if (frames < 1) throw ConfigError("frame count must be positive");
  if (depth != 8 && depth != 10) throw ConfigError("depth must be 8 or 10");
  if (qp < 0 || qp > 63) throw ConfigError("qp must be in 0..63");
  if (ctu_size < 16 || ctu_size > 256 || ctu_size % 16 != 0)
    throw ConfigError("ctu size must be a multiple of 16 in 16..256");
  if (stages.empty()) throw ConfigError("at least one stage must be enabled");
}

void normalize_stages(std::vector<StageTiming>& stages) {
  const int64_t total = std::accumulate(stages.begin(), stages.end(), int64_t{0},
                                        [](int64_t a, const StageTiming& s) { return a + s.total_ns; });
  for (auto& s : stages) {
    s.percent = total > 0 ? 100.0 * static_cast<double>(s.total_ns) / static_cast<double>(total)
                          : 100.0 / static_cast<double>(stages.size());
  }
}

std::string format_hash(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

uint64_t parse_hash(std::string_view hex) {
  uint64_t v = 0;
  if (hex.size() != 16) throw FormatError("frame_hash must be 16 hex digits");
  const auto [p, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
  if (ec != std::errc() || p != hex.data() + hex.size()) throw FormatError("frame_hash is not hexadecimal");
  return v;
}

ReportFormat parse_format(std::string_view s) {
  if (s == "text") return ReportFormat::kText;
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "json") return ReportFormat::kJson;
  throw ConfigError("unknown format '" + std::string(s) + "' (expected text, csv or json)");
}

std::string host_description() {
  std::string s;
  utsname u{};
  if (uname(&u) == 0) s = std::string(u.sysname) + " " + u.release + " " + u.machine;
  s += " cpus=" + std::to_string(std::thread::hardware_concurrency());
  s += " tiers=";
  bool first = true;
  for (VariantTier t : detect_host_capabilities()) {
    s += (first ? "" : ",") + std::string(tier_name(t));
    first = false;
  }
  return s;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

json workload_json(const WorkloadSpec& w) {
  json stages = json::array();
  for (Stage s : w.stages) stages.push_back(stage_name(s));
  return {{"width", w.width},   {"height", w.height},     {"frames", w.frames},
          {"depth", w.depth},   {"seed", w.seed},         {"qp", w.qp},
          {"ctu_size", w.ctu_size},
          {"source", w.input.empty() ? std::string("synthetic") : w.input},
          {"stages", stages}};
}

json meta_json(const RunMeta& m) {
  return {{"tool_version", m.tool_version}, {"timestamp", m.timestamp}, {"host", m.host},
          {"tier", m.tier},                 {"workers", m.workers},     {"workload", workload_json(m.workload)}};
}

json stages_json(const std::vector<StageTiming>& stages) {
  json a = json::array();
  for (const auto& s : stages)
    a.push_back({{"name", s.name}, {"total_ns", s.total_ns}, {"calls", s.calls}, {"percent", s.percent}});
  return a;
}

WorkloadSpec workload_from(const json& j) {
  WorkloadSpec w;
  w.width = j.at("width").get<int>();
  w.height = j.at("height").get<int>();
  w.frames = j.at("frames").get<int>();
  w.depth = j.at("depth").get<int>();
  w.seed = j.at("seed").get<uint64_t>();
  w.qp = j.at("qp").get<int>();
  w.ctu_size = j.at("ctu_size").get<int>();
  const std::string src = j.at("source").get<std::string>();
  w.input = src == "synthetic" ? std::string() : src;
  w.stages.clear();
  for (const auto& s : j.at("stages")) {
    const auto st = parse_stage(s.get<std::string>());
    if (!st) throw FormatError("unknown stage " + s.get<std::string>());
    w.stages.push_back(*st);
  }
  return w;
}

RunMeta meta_from(const json& j) {
  RunMeta m;
  m.tool_version = j.at("tool_version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.host = j.at("host").get<std::string>();
  m.tier = j.at("tier").get<std::string>();
  m.workers = j.at("workers").get<int>();
  m.workload = workload_from(j.at("workload"));
  return m;
}

std::vector<StageTiming> stages_from(const json& j) {
  std::vector<StageTiming> v;
  for (const auto& s : j)
    v.push_back({s.at("name").get<std::string>(), s.at("total_ns").get<int64_t>(), s.at("calls").get<uint64_t>(),
                 s.at("percent").get<double>()});
  return v;
}

json report_json(const AnyReport& r) {
  return std::visit(
      [](const auto& rep) {
        json j = {{"meta", meta_json(rep.meta)},
                  {"stages", stages_json(rep.stages)},
                  {"frame_hash", format_hash(rep.frame_hash)}};
        if constexpr (std::is_same_v<std::decay_t<decltype(rep)>, SweepReport>) {
          json rows = json::array();
          for (const auto& row : rep.sweep)
            rows.push_back({{"tier", row.tier},
                            {"workers", row.workers},
                            {"makespan_ns", row.makespan_ns},
                            {"speedup", row.speedup}});
          j["sweep"] = rows;
        }
        return j;
      },
      r);
}

void emit_text(const AnyReport& r, std::ostream& out) {
  std::visit(
      [&](const auto& rep) {
        const WorkloadSpec& w = rep.meta.workload;
        out << "vvckit " << rep.meta.tool_version << "  " << rep.meta.timestamp << '\n';
        out << "host     " << rep.meta.host << '\n';
        out << "tier     " << rep.meta.tier << "   workers " << rep.meta.workers << '\n';
        out << "workload " << w.width << 'x' << w.height << " x" << w.frames << " frames, depth " << w.depth
            << ", qp " << w.qp << ", ctu " << w.ctu_size << ", seed " << w.seed << ", "
            << (w.input.empty() ? std::string("synthetic") : w.input) << '\n';
        out << '\n' << std::left << std::setw(8) << "stage" << std::right << std::setw(16) << "total_ns"
            << std::setw(12) << "calls" << std::setw(10) << "percent" << '\n';
        for (const auto& s : rep.stages)
          out << std::left << std::setw(8) << s.name << std::right << std::setw(16) << s.total_ns << std::setw(12)
              << s.calls << std::setw(9) << std::fixed << std::setprecision(2) << s.percent << "%\n";
        out << "\nframe_hash " << format_hash(rep.frame_hash) << '\n';
        if constexpr (std::is_same_v<std::decay_t<decltype(rep)>, SweepReport>) {
          out << '\n' << std::left << std::setw(11) << "tier" << std::right << std::setw(8) << "workers"
              << std::setw(16) << "makespan_ns" << std::setw(10) << "speedup" << '\n';
          for (const auto& row : rep.sweep)
            out << std::left << std::setw(11) << row.tier << std::right << std::setw(8) << row.workers
                << std::setw(16) << row.makespan_ns << std::setw(10) << std::fixed << std::setprecision(3)
                << row.speedup << '\n';
        }
      },
      r);
}

void emit_csv(const AnyReport& r, std::ostream& out) {
  if (const auto* sweep = std::get_if<SweepReport>(&r)) {
    out << "tier,workers,makespan_ns,speedup\n";
    for (const auto& row : sweep->sweep)
      out << row.tier << ',' << row.workers << ',' << row.makespan_ns << ',' << std::setprecision(6) << row.speedup
          << '\n';
    return;
  }
  const auto& rep = std::get<StageReport>(r);
  out << "stage,total_ns,calls,percent\n";
  for (const auto& s : rep.stages)
    out << s.name << ',' << s.total_ns << ',' << s.calls << ',' << std::fixed << std::setprecision(4) << s.percent
        << '\n';
}

}  // namespace

std::string to_json(const AnyReport& report) { return report_json(report).dump(2); }

AnyReport parse_report_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.contains("sweep")) {
      SweepReport r;
      r.meta = meta_from(j.at("meta"));
      r.stages = stages_from(j.at("stages"));
      r.frame_hash = parse_hash(j.at("frame_hash").get<std::string>());
      for (const auto& row : j.at("sweep"))
        r.sweep.push_back({row.at("tier").get<std::string>(), row.at("workers").get<int>(),
                           row.at("makespan_ns").get<int64_t>(), row.at("speedup").get<double>()});
      return r;
    }
    StageReport r;
    r.meta = meta_from(j.at("meta"));
    r.stages = stages_from(j.at("stages"));
    r.frame_hash = parse_hash(j.at("frame_hash").get<std::string>());
    return r;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed report JSON: ") + e.what());
  }
}

void emit_report(const AnyReport& report, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::kText: emit_text(report, out); break;
    case ReportFormat::kCsv: emit_csv(report, out); break;
    case ReportFormat::kJson: out << to_json(report) << '\n'; break;
  }
  out.flush();
  if (!out) throw IoError("failed writing report");
}

void emit_report(const AnyReport& report, ReportFormat format, const std::filesystem::path& sink) {
  if (sink.empty()) {
    emit_report(report, format, std::cout);
    return;
  }
  std::ofstream out(sink, std::ios::binary);
  if (!out) throw IoError("cannot open " + sink.string() + " for writing");
  emit_report(report, format, out);
}

}  // namespace vvckit
