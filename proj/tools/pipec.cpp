#include <iostream>

#include "CLI11.hpp"
#include "pipec_cli/commands.hpp"

#ifndef PIPEC_SOURCE_DIR
#define PIPEC_SOURCE_DIR "."
#endif

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  CLI::App app{"pipec: stream pipelines fused into loop code"};
  app.require_subcommand(1);
  pc::Io io{std::cout, std::cerr};

  auto* list = app.add_subcommand("list", "print the pipeline registry");

  auto* emit = app.add_subcommand("emit", "print or write the C code of a pipeline");
  std::string emit_name;
  uint64_t seed = 0;
  std::string out;
  emit->add_option("name", emit_name)->required();
  emit->add_option("--seed", seed, "naming session seed");
  emit->add_option("--out", out, "output file");

  auto* run = app.add_subcommand("run", "interpret a pipeline on generated inputs");
  std::string run_name;
  size_t run_size = 10000;
  run->add_option("name", run_name)->required();
  run->add_option("--size", run_size, "input size")->capture_default_str();

  auto* check = app.add_subcommand("check", "law suite and oracle agreement");
  pc::CheckOptions copt;
  check->add_option("--fuel", copt.fuel)->capture_default_str();
  check->add_option("--instances", copt.instances)->capture_default_str();
  check->add_option("--seed", copt.seed)->capture_default_str();
  check->add_option("--corpus", copt.corpus, "random pipelines")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "compile and time a benchmark");
  std::string bench_name;
  pc::BenchOptions bopt;
  std::string cc, baselines;
  bench->add_option("name", bench_name)->required();
  bench->add_option("--iters", bopt.iterations)->capture_default_str();
  bench->add_option("--size", bopt.size)->capture_default_str();
  bench->add_option("--cc", cc, "C compiler command (default: $PIPEC_CC, else cc)");
  bench->add_option("--baselines", baselines, "directory of handwritten baseline_<name> sources");
  bench->add_option("--reports", bopt.reports_dir)->capture_default_str();

  auto* goldens = app.add_subcommand("goldens", "compare emitted C against stored goldens");
  bool update = false;
  std::string gdir = std::string(PIPEC_SOURCE_DIR) + "/goldens";
  goldens->add_flag("--update", update, "rewrite the goldens");
  goldens->add_option("--dir", gdir)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto& reg = pc::builtin_registry();
    if (*list) return pc::cmd_list(reg, io);
    if (*emit) return pc::cmd_emit(reg, emit_name, seed, out.empty() ? std::nullopt : std::optional<fs::path>(out), io);
    if (*run) return pc::cmd_run(reg, run_name, run_size, io);
    if (*check) return pc::cmd_check(reg, copt, io);
    if (*bench) {
      if (!cc.empty()) bopt.cc = cc;
      bopt.baselines_dir = baselines;
      return pc::cmd_bench(reg, bench_name, bopt, io);
    }
    if (*goldens) return pc::cmd_goldens(reg, gdir, update, io);
  } catch (const std::exception& e) {
    std::cerr << "pipec: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
