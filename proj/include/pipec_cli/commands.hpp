// The pipec commands, as library functions returning exit statuses.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pipec_cli/registry.hpp"

namespace pc {

struct Io {
  std::ostream& out;
  std::ostream& err;
};

// ---- list ----
int cmd_list(const Registry& reg, Io io);

// ---- emit ----
// Deterministic in (spec, seed).
std::string emit_pipeline(const PipelineSpec& spec, uint64_t seed = 0);
int cmd_emit(const Registry& reg, const std::string& name, uint64_t seed,
             const std::optional<std::filesystem::path>& out_path, Io io);

// ---- run ----
struct RunResult {
  Outcome interp;
  Outcome reference;
  bool matches() const { return interp == reference; }
};
RunResult run_pipeline(const PipelineSpec& spec, size_t size);
int cmd_run(const Registry& reg, const std::string& name, size_t size, Io io);

// ---- check ----
struct CheckOptions {
  int fuel = 50;
  int instances = 100;
  uint64_t seed = 1;
  int corpus = 200;                 // random pipelines compared against the oracle
  std::vector<size_t> sizes = {0, 1, 17};  // registry sizes compared against the oracle
  int inject_broken = 0;            // test fixture, see os::LawSuiteOptions
};
int cmd_check(const Registry& reg, const CheckOptions& opt, Io io);

// ---- goldens ----
std::filesystem::path golden_path(const std::filesystem::path& dir, const std::string& name);
int cmd_goldens(const Registry& reg, const std::filesystem::path& dir, bool update, Io io);

// ---- bench ----

// One CSV line of the timing harness: name,iter,ns,checksum. Iteration 0
// is the untimed warm-up.
struct BenchLine {
  std::string name;
  int iter = 0;
  int64_t ns = 0;
  int64_t checksum = 0;
};
std::optional<BenchLine> parse_bench_line(const std::string& line);
std::string format_bench_line(const BenchLine& l);

// C source of a harness main that fills the inputs of `spec` at `size`,
// calls `fn` once to warm up and then `iters` more times, printing one CSV
// line per call. Only timing of the call itself is measured.
std::string harness_source(const PipelineSpec& spec, size_t size, int iters, const std::string& fn = "fn");

struct BenchReport {
  std::string name;
  size_t size = 0;
  int iterations = 0;
  bool skipped = false;          // no compiler
  std::string compiler;
  double mean_ns = 0, stddev_ns = 0;
  int64_t checksum = 0;
  int64_t reference = 0;
  bool checksum_ok = false;
  std::optional<double> baseline_mean_ns;
  std::vector<std::string> notes;
  std::string json() const;      // one line
};

// Compiler command: explicit, else $PIPEC_CC, else "cc".
std::string resolve_cc(const std::optional<std::string>& cc);
bool compiler_available(const std::string& cc);

struct BenchOptions {
  int iterations = 20;
  size_t size = 10'000'000;
  std::optional<std::string> cc;
  std::filesystem::path work_dir;      // default: a temp directory
  std::filesystem::path reports_dir = "reports";
  std::filesystem::path baselines_dir; // optional handwritten baselines, <name>.c
};
BenchReport bench_pipeline(const PipelineSpec& spec, const BenchOptions& opt);
int cmd_bench(const Registry& reg, const std::string& name, const BenchOptions& opt, Io io);

}  // namespace pc
