#include "vvckit/cli.hpp"

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vvckit/bench.hpp"
#include "vvckit/error.hpp"

namespace vvckit {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Stage> parse_stage_list(const std::string& s) {
  std::vector<Stage> stages;
  for (const std::string& name : split_list(s)) {
    const auto st = parse_stage(name);
    if (!st) throw ConfigError("unknown stage '" + name + "' (expected iqit, mc, alf)");
    if (std::find(stages.begin(), stages.end(), *st) == stages.end()) stages.push_back(*st);
  }
  if (stages.empty()) throw ConfigError("--stages needs at least one stage");
  return stages;
}

std::vector<int> parse_worker_list(const std::string& s) {
  std::vector<int> counts;
  for (const std::string& item : split_list(s)) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 1) throw ConfigError("invalid worker count '" + item + "'");
    counts.push_back(v);
  }
  if (counts.empty()) throw ConfigError("--workers needs at least one count");
  return counts;
}

struct WorkloadArgs {
  WorkloadSpec spec;
  std::string stages = "iqit,mc,alf";
  std::string format = "text";
  std::string out;

  void emit(const AnyReport& r, std::ostream& stdout_sink) const {
    if (out.empty())
      emit_report(r, parse_format(format), stdout_sink);
    else
      emit_report(r, parse_format(format), std::filesystem::path(out));
  }

  void add_to(CLI::App& app) {
    app.add_option("--width", spec.width, "Luma width in samples")->capture_default_str();
    app.add_option("--height", spec.height, "Luma height in samples")->capture_default_str();
    app.add_option("--frames", spec.frames, "Frame count")->capture_default_str();
    app.add_option("--depth", spec.depth, "Bit depth")->check(CLI::IsMember({8, 10}))->capture_default_str();
    app.add_option("--seed", spec.seed, "Workload seed")->capture_default_str();
    app.add_option("--qp", spec.qp, "Quantization parameter")->check(CLI::Range(0, 63))->capture_default_str();
    app.add_option("--ctu-size", spec.ctu_size, "CTU size in luma samples")->capture_default_str();
    app.add_option("--stages", stages, "Comma list of iqit, mc, alf")->capture_default_str();
    app.add_option("--input", spec.input, "Raw 4:2:0 YUV file (replaces the synthetic source)");
    app.add_option("--format", format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", out, "Output path (default: standard output)");
  }

  void finish() {
    spec.stages = parse_stage_list(stages);
    spec.validate();
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"VVC decoder kernel toolkit: benchmark, verify and sweep", "vvckit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CLI::App* bench = app.add_subcommand("bench", "Time the decode stages on one workload");
  WorkloadArgs bench_args;
  bench_args.add_to(*bench);
  std::string bench_tier = "auto";
  int bench_workers = 1;
  bench->add_option("--tier", bench_tier, "scalar, vector128, vector256 or auto")->capture_default_str();
  bench->add_option("--workers", bench_workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  CLI::App* sweep = app.add_subcommand("sweep", "Run every tier x worker-count cell on one workload");
  WorkloadArgs sweep_args;
  sweep_args.add_to(*sweep);
  std::string sweep_tiers = "auto";
  std::string sweep_workers = "1,2,4";
  sweep->add_option("--tier", sweep_tiers, "Comma list of tiers; auto = every available tier")
      ->capture_default_str();
  sweep->add_option("--workers", sweep_workers, "Comma list of worker counts")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "Compare every kernel variant against the scalar reference");
  uint64_t verify_seed = 1;
  uint64_t verify_trials = 10000;
  std::string verify_families;
  std::string inject;
  verify->add_option("--seed", verify_seed, "Input seed")->capture_default_str();
  verify->add_option("--trials", verify_trials, "Random inputs per kernel id")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--family", verify_families, "Comma list of kernel families to check (default: all)");
  verify->add_option("--inject-fault", inject, "Replace one family with a deliberately wrong variant")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bench->parsed()) {
      bench_args.finish();
      const StageReport r = run_bench(bench_args.spec, parse_tier(bench_tier), bench_workers);
      bench_args.emit(r, out);
      return kExitOk;
    }
    if (sweep->parsed()) {
      sweep_args.finish();
      std::vector<VariantTier> tiers;
      for (const std::string& name : split_list(sweep_tiers)) {
        if (const auto t = parse_tier(name)) {
          tiers.push_back(*t);
        } else {
          for (VariantTier avail : detect_capabilities()) tiers.push_back(avail);
        }
      }
      if (tiers.empty()) throw ConfigError("--tier needs at least one tier");
      const auto caps = detect_capabilities();
      for (VariantTier t : tiers)
        if (std::find(caps.begin(), caps.end(), t) == caps.end())
          throw ConfigError("tier " + std::string(tier_name(t)) + " is not available on this host");
      const std::vector<int> workers = parse_worker_list(sweep_workers);
      const SweepReport r = run_sweep(sweep_args.spec, workers, tiers);
      sweep_args.emit(r, out);
      return kExitOk;
    }
    if (verify->parsed()) {
      std::optional<KernelFamily> fault;
      if (!inject.empty()) {
        fault = parse_family(inject);
        if (!fault) throw ConfigError("unknown kernel family '" + inject + "'");
      }
      std::vector<KernelFamily> families;
      for (const std::string& name : split_list(verify_families)) {
        const auto f = parse_family(name);
        if (!f) throw ConfigError("unknown kernel family '" + name + "'");
        families.push_back(*f);
      }
      const VerifySummary s = run_verify(verify_seed, verify_trials, fault, families, &out);
      std::size_t bad = 0;
      for (const auto& r : s.reports) bad += r.ok() ? 0 : 1;
      out << (s.status == 0 ? "PASS" : "FAIL") << ": " << s.reports.size() - bad << " of " << s.reports.size()
          << " kernel ids bit-exact\n";
      return s.status == 0 ? kExitOk : kExitMismatch;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    // Determinism violations in a sweep are verification failures.
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  }
  return kExitUsage;
}

}  // namespace vvckit
