#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vvckit {

enum class Stage : uint8_t { kIqit, kMc, kAlf };

inline constexpr Stage kAllStages[] = {Stage::kIqit, Stage::kMc, Stage::kAlf};

const char* stage_name(Stage s);
std::optional<Stage> parse_stage(std::string_view s);

struct WorkloadSpec {
  int width = 1920;
  int height = 1080;
  int frames = 8;
  int depth = 8;
  uint64_t seed = 1;
  int qp = 32;
  int ctu_size = 128;
  std::string input;  // raw 4:2:0 path; empty = synthetic
  std::vector<Stage> stages{Stage::kIqit, Stage::kMc, Stage::kAlf};

  bool has(Stage s) const;
  // Throws ConfigError.
  void validate() const;

  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

struct RunMeta {
  std::string tool_version;
  std::string timestamp;
  std::string host;
  std::string tier;
  int workers = 1;
  WorkloadSpec workload;

  friend bool operator==(const RunMeta&, const RunMeta&) = default;
};

struct StageTiming {
  std::string name;
  int64_t total_ns = 0;
  uint64_t calls = 0;
  double percent = 0.0;

  friend bool operator==(const StageTiming&, const StageTiming&) = default;
};

struct StageReport {
  RunMeta meta;
  std::vector<StageTiming> stages;
  uint64_t frame_hash = 0;

  friend bool operator==(const StageReport&, const StageReport&) = default;
};

struct SweepRow {
  std::string tier;
  int workers = 1;
  int64_t makespan_ns = 0;
  double speedup = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Stages and frame hash come from the (scalar, 1) baseline cell.
struct SweepReport {
  RunMeta meta;
  std::vector<StageTiming> stages;
  uint64_t frame_hash = 0;
  std::vector<SweepRow> sweep;

  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

// Fills percent from total_ns so the shares sum to 100.
void normalize_stages(std::vector<StageTiming>& stages);

std::string format_hash(uint64_t h);
uint64_t parse_hash(std::string_view hex);

enum class ReportFormat { kText, kCsv, kJson };

ReportFormat parse_format(std::string_view s);

using AnyReport = std::variant<StageReport, SweepReport>;

void emit_report(const AnyReport& report, ReportFormat format, std::ostream& out);
// Empty path writes to standard output. Throws IoError.
void emit_report(const AnyReport& report, ReportFormat format, const std::filesystem::path& sink);

std::string to_json(const AnyReport& report);
// Returns SweepReport when a "sweep" key is present. Throws FormatError.
AnyReport parse_report_json(std::string_view json);

std::string host_description();
std::string utc_timestamp();

}  // namespace vvckit
