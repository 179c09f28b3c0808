#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "vvckit/bench.hpp"
#include "vvckit/cli.hpp"

namespace vvckit {
namespace {

WorkloadSpec small_spec() {
  WorkloadSpec s;
  s.width = 200;
  s.height = 136;
  s.frames = 2;
  s.ctu_size = 64;
  s.seed = 11;
  return s;
}

double percent_sum(const std::vector<StageTiming>& st) {
  return std::accumulate(st.begin(), st.end(), 0.0, [](double a, const StageTiming& s) { return a + s.percent; });
}

TEST(Report, NormalizationExample) {
  std::vector<StageTiming> st{{"alf", 60, 1, 0}, {"mc", 40, 1, 0}};
  normalize_stages(st);
  EXPECT_DOUBLE_EQ(st[0].percent, 60.0);
  EXPECT_DOUBLE_EQ(st[1].percent, 40.0);

  StageReport r;
  r.stages = st;
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_DOUBLE_EQ(j["stages"][0]["percent"].get<double>(), 60.0);
  EXPECT_DOUBLE_EQ(j["stages"][1]["percent"].get<double>(), 40.0);
}

TEST(Report, HashFormatting) {
  EXPECT_EQ(format_hash(0xABCULL), "0000000000000abc");
  EXPECT_EQ(parse_hash("0000000000000abc"), 0xABCULL);
  EXPECT_THROW(parse_hash("abc"), FormatError);
  EXPECT_THROW(parse_hash("000000000000zabc"), FormatError);
}

TEST(Report, CsvSweepLineCount) {
  SweepReport r;
  r.sweep = {{"scalar", 1, 100, 1.0}, {"scalar", 2, 60, 1.66}, {"vector256", 2, 30, 3.3}};
  std::ostringstream os;
  emit_report(r, ReportFormat::kCsv, os);
  const std::string text = os.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(text.substr(0, text.find('\n')), "tier,workers,makespan_ns,speedup");
}

TEST(Report, JsonRoundTrip) {
  StageReport r = run_bench(small_spec(), VariantTier::kScalar, 2);
  EXPECT_EQ(std::get<StageReport>(parse_report_json(to_json(r))), r);

  const std::vector<int> workers{1, 2};
  const std::vector<VariantTier> tiers{VariantTier::kScalar};
  WorkloadSpec s = small_spec();
  s.frames = 1;
  const SweepReport sw = run_sweep(s, workers, tiers);
  EXPECT_EQ(std::get<SweepReport>(parse_report_json(to_json(sw))), sw);

  EXPECT_THROW(parse_report_json("{"), FormatError);
  EXPECT_THROW(parse_report_json(R"({"meta": {}})"), FormatError);
}

TEST(Report, FileSinkErrors) {
  StageReport r;
  EXPECT_THROW(emit_report(r, ReportFormat::kJson, std::filesystem::path("/nonexistent-dir/x.json")), IoError);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Workload, Validation) {
  WorkloadSpec s;
  EXPECT_NO_THROW(s.validate());
  s.depth = 9;
  EXPECT_THROW(s.validate(), ConfigError);
  s = WorkloadSpec{};
  s.ctu_size = 100;
  EXPECT_THROW(s.validate(), ConfigError);
  s = WorkloadSpec{};
  s.stages.clear();
  EXPECT_THROW(s.validate(), ConfigError);
  s = WorkloadSpec{};
  s.frames = 0;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Bench, HashIndependentOfTierAndWorkers) {
  for (int depth : {8, 10}) {
    WorkloadSpec s = small_spec();
    s.depth = depth;
    const uint64_t ref = run_bench(s, VariantTier::kScalar, 1).frame_hash;
    for (VariantTier t : detect_capabilities())
      for (int w : {1, 2, 4}) EXPECT_EQ(run_bench(s, t, w).frame_hash, ref) << tier_name(t) << " x" << w;
    s.seed += 1;
    EXPECT_NE(run_bench(s, VariantTier::kScalar, 1).frame_hash, ref);
  }
}

TEST(Bench, StagesAndPercentages) {
  WorkloadSpec s = small_spec();
  const StageReport all = run_bench(s, std::nullopt, 1);
  ASSERT_EQ(all.stages.size(), 3u);
  EXPECT_NEAR(percent_sum(all.stages), 100.0, 0.1);
  for (const auto& st : all.stages) EXPECT_GT(st.calls, 0u) << st.name;
  EXPECT_EQ(all.meta.tool_version, kToolVersion);

  s.stages = {Stage::kAlf};
  const StageReport alf = run_bench(s, std::nullopt, 1);
  ASSERT_EQ(alf.stages.size(), 1u);
  EXPECT_EQ(alf.stages[0].name, "alf");
  EXPECT_DOUBLE_EQ(alf.stages[0].percent, 100.0);
}

TEST(Bench, EachStageChangesOutput) {
  WorkloadSpec s = small_spec();
  const uint64_t all = run_bench(s, VariantTier::kScalar, 1).frame_hash;
  for (Stage drop : kAllStages) {
    WorkloadSpec t = s;
    std::erase(t.stages, drop);
    EXPECT_NE(run_bench(t, VariantTier::kScalar, 1).frame_hash, all) << stage_name(drop);
  }
}

TEST(Bench, YuvInputIsUsed) {
  const auto path = std::filesystem::temp_directory_path() / "vvckit_bench_input.yuv";
  WorkloadSpec s = small_spec();
  std::vector<Frame> frames;
  for (int i = 0; i < 2; ++i) {
    Frame f = Frame::create(s.width, s.height, kDepth8);
    fill_random(f.luma, 100 + i);
    fill_random(f.cb, 200 + i);
    fill_random(f.cr, 300 + i);
    frames.push_back(std::move(f));
  }
  write_yuv420(path, frames);
  s.input = path.string();
  const auto loaded = workload_frames(s);
  ASSERT_EQ(loaded.size(), 2u);
  EXPECT_EQ(frame_hash(loaded[1]), frame_hash(frames[1]));
  EXPECT_NE(run_bench(s, VariantTier::kScalar, 1).frame_hash, run_bench(small_spec(), VariantTier::kScalar, 1).frame_hash);
  std::filesystem::remove(path);
  s.input = "/nonexistent/input.yuv";
  EXPECT_THROW(run_bench(s, VariantTier::kScalar, 1), IoError);
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "vvckit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

TEST(Cli, BenchJson) {
  std::string out;
  ASSERT_EQ(cli({"bench", "--width", "128", "--height", "64", "--frames", "1", "--format", "json"}, &out), 0);
  const auto j = nlohmann::json::parse(out);
  EXPECT_EQ(j["meta"]["workload"]["width"], 128);
  EXPECT_EQ(j["frame_hash"].get<std::string>().size(), 16u);
  double sum = 0;
  for (const auto& s : j["stages"]) sum += s["percent"].get<double>();
  EXPECT_NEAR(sum, 100.0, 0.1);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}), 2);
  EXPECT_EQ(cli({"frobnicate"}), 2);
  EXPECT_EQ(cli({"bench", "--depth", "9"}), 2);
  EXPECT_EQ(cli({"bench", "--tier", "avx9000"}), 2);
  EXPECT_EQ(cli({"bench", "--ctu-size", "100", "--frames", "1"}), 2);
  EXPECT_EQ(cli({"bench", "--input", "/nonexistent.yuv", "--width", "64", "--height", "64"}), 2);
  EXPECT_EQ(cli({"verify", "--family", "bogus"}), 2);
  EXPECT_EQ(cli({"verify", "--trials", "0"}), 2);

  std::string out;
  EXPECT_EQ(cli({"verify", "--trials", "5", "--family", "xform-inv"}, &out), 0);
  EXPECT_NE(out.find("PASS"), std::string::npos);
  EXPECT_EQ(cli({"verify", "--trials", "20", "--family", "alf-luma", "--inject-fault", "alf-luma"}, &out), 1);
  EXPECT_NE(out.find("MISMATCH"), std::string::npos);
}

TEST(Cli, SweepCsvToFile) {
  const auto path = std::filesystem::temp_directory_path() / "vvckit_sweep.csv";
  ASSERT_EQ(cli({"sweep", "--width", "96", "--height", "64", "--frames", "1", "--tier", "scalar", "--workers",
                 "1,2,3", "--format", "csv", "--out", path.string()}),
            0);
  std::ifstream in(path);
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 4);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace vvckit
