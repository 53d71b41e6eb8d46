#include "pipec_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "backend_ir/c_normalize.hpp"
#include "backend_ir/emit_c.hpp"
#include "json.hpp"
#include "oracle_semantics/laws.hpp"
#include "pipec_cli/corpus.hpp"

namespace pc {

namespace fs = std::filesystem;

int cmd_list(const Registry& reg, Io io) {
  for (const auto& s : reg.all()) {
    io.out << s.name << (s.benchmark ? "  [bench]" : "") << "  inputs:";
    if (s.inputs.empty()) io.out << " none";
    for (auto k : s.inputs) io.out << ' ' << input_name(k);
    io.out << "  " << s.summary << '\n';
  }
  return 0;
}

std::string emit_pipeline(const PipelineSpec& spec, uint64_t seed) {
  bir::SessionScope scope(seed);
  bir::Stm body = build_stm(spec.pipeline);
  bir::EmitOptions opt;
  opt.pipeline_name = spec.name;
  opt.seed = seed;
  return bir::emit_c(body, params_of(spec.pipeline), opt);
}

namespace {
bool write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) return std::nullopt;
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const PipelineSpec* lookup(const Registry& reg, const std::string& name, Io io) {
  const auto* s = reg.find(name);
  if (!s) io.err << "unknown pipeline: " << name << " (see `pipec list`)\n";
  return s;
}
}  // namespace

int cmd_emit(const Registry& reg, const std::string& name, uint64_t seed, const std::optional<fs::path>& out_path,
             Io io) {
  const auto* s = lookup(reg, name, io);
  if (!s) return 2;
  std::string c = emit_pipeline(*s, seed);
  if (!out_path) {
    io.out << c;
    return 0;
  }
  if (!write_file(*out_path, c)) {
    io.err << "cannot write " << out_path->string() << '\n';
    return 1;
  }
  io.out << "wrote " << out_path->string() << '\n';
  return 0;
}

RunResult run_pipeline(const PipelineSpec& spec, size_t size) {
  Arrays in = spec.make_inputs(size);
  RunResult r;
  r.interp = interp_run(spec.pipeline, in);
  r.reference = spec.reference(in);
  return r;
}

int cmd_run(const Registry& reg, const std::string& name, size_t size, Io io) {
  const auto* s = lookup(reg, name, io);
  if (!s) return 2;
  try {
    RunResult r = run_pipeline(*s, size);
    io.out << s->name << " size=" << size << ' ' << r.interp.str() << " checksum=" << r.interp.checksum()
           << " reference=" << (r.matches() ? "match" : "MISMATCH " + r.reference.str()) << '\n';
    return r.matches() ? 0 : 1;
  } catch (const std::exception& e) {
    io.err << s->name << ": " << e.what() << '\n';
    return 2;
  }
}

int cmd_check(const Registry& reg, const CheckOptions& opt, Io io) {
  int failures = 0;
  os::LawSuiteOptions lo;
  lo.seed = opt.seed;
  lo.instances = opt.instances;
  lo.fuel = opt.fuel;
  lo.inject_broken = opt.inject_broken;
  bool vacuous = opt.fuel <= 0 || opt.instances <= 0;
  if (vacuous) io.err << "warning: fuel or instance count is zero; every law holds vacuously\n";

  for (const auto& r : os::run_law_suite(lo)) {
    bool ok = vacuous ? r.counterexamples == 0 : r.passed();
    io.out << "law " << r.number << ' ' << r.name << (r.weak ? " (weak)" : "") << ": "
           << (ok ? (vacuous ? "pass (vacuous)" : "pass") : "FAIL") << "  instances=" << r.instances
           << " counterexamples=" << r.counterexamples << " negative=" << r.negative_detected << '/'
           << r.negative_instances << '\n';
    if (r.first_counterexample) {
      const auto& c = *r.first_counterexample;
      io.out << "  counterexample at step " << c.index << "\n    lhs: " << os::trace_str(c.lhs)
             << "\n    rhs: " << os::trace_str(c.rhs) << '\n';
    }
    if (!ok) failures++;
  }

  int corpus_bad = 0;
  for (const auto& c : finite_corpus(opt.seed, opt.corpus)) {
    try {
      if (!(oracle_run(c.pipeline, c.inputs) == interp_run(c.pipeline, c.inputs))) {
        if (corpus_bad++ == 0) io.out << "  first disagreement: " << show(c.pipeline) << '\n';
      }
    } catch (const std::exception& e) {
      if (corpus_bad++ == 0) io.out << "  first error: " << show(c.pipeline) << ": " << e.what() << '\n';
    }
  }
  io.out << "corpus: " << opt.corpus - corpus_bad << '/' << opt.corpus << " random pipelines agree with the oracle\n";
  failures += corpus_bad;

  for (const auto& s : reg.all()) {
    for (size_t n : opt.sizes) {
      Arrays in = s.make_inputs(n);
      bool ok = false;
      std::string why;
      try {
        Outcome o = oracle_run(s.pipeline, in), i = interp_run(s.pipeline, in);
        ok = o == i && o == s.reference(in);
        if (!ok) why = "oracle " + o.str() + " interp " + i.str();
      } catch (const std::exception& e) {
        why = e.what();
      }
      if (!ok) {
        failures++;
        io.out << "registry " << s.name << " size " << n << ": FAIL " << why << '\n';
      }
    }
  }
  io.out << (failures ? "check: FAILED (" + std::to_string(failures) + ")" : std::string("check: ok")) << '\n';
  return failures ? 1 : 0;
}

fs::path golden_path(const fs::path& dir, const std::string& name) { return dir / (name + ".c"); }

int cmd_goldens(const Registry& reg, const fs::path& dir, bool update, Io io) {
  int drift = 0;
  for (const auto& s : reg.all()) {
    std::string c = emit_pipeline(s);
    fs::path p = golden_path(dir, s.name);
    if (update) {
      if (!write_file(p, c)) {
        io.err << "cannot write " << p.string() << '\n';
        return 1;
      }
      io.out << s.name << ": written\n";
      continue;
    }
    auto stored = read_file(p);
    if (!stored) {
      drift++;
      io.out << s.name << ": MISSING " << p.string() << '\n';
      continue;
    }
    auto d = bir::alpha_compare_c(*stored, c);
    if (d.equal) {
      io.out << s.name << ": match\n";
    } else {
      drift++;
      io.out << s.name << ": DRIFT at token " << d.index << " (golden `" << d.lhs << "`, emitted `" << d.rhs << "`)\n";
    }
  }
  return drift ? 1 : 0;
}

// ---- bench ----

std::optional<BenchLine> parse_bench_line(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
  if (f.size() != 4 || f[0].empty()) return std::nullopt;
  try {
    size_t p1, p2, p3;
    BenchLine l;
    l.name = f[0];
    l.iter = std::stoi(f[1], &p1);
    l.ns = std::stoll(f[2], &p2);
    l.checksum = std::stoll(f[3], &p3);
    if (p1 != f[1].size() || p2 != f[2].size() || p3 != f[3].size() || l.iter < 0 || l.ns < 0) return std::nullopt;
    return l;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::string format_bench_line(const BenchLine& l) {
  return l.name + "," + std::to_string(l.iter) + "," + std::to_string(l.ns) + "," + std::to_string(l.checksum);
}

std::string harness_source(const PipelineSpec& spec, size_t size, int iters, const std::string& fn) {
  std::string ret;
  {
    bir::SessionScope scope;
    ret = bir::c_return_type(build_stm(spec.pipeline));
  }
  std::ostringstream o;
  o << "#include <stdint.h>\n#include <stdio.h>\n#include <stdlib.h>\n#include <time.h>\n\n";
  o << ret << ' ' << fn << '(';
  for (size_t i = 1; i <= spec.inputs.size(); i++) o << (i > 1 ? ", " : "") << "const int * a" << i << ", int n" << i;
  if (spec.inputs.empty()) o << "void";
  o << ");\n\n";
  o << "static int64_t now_ns(void) {\n  struct timespec t;\n  clock_gettime(CLOCK_MONOTONIC, &t);\n"
       "  return (int64_t)t.tv_sec * 1000000000LL + t.tv_nsec;\n}\n\n";
  o << "int main(void) {\n";
  for (size_t i = 0; i < spec.inputs.size(); i++) {
    auto k = spec.inputs[i];
    size_t n = input_length(k, size);
    bool mod10 = input_fill(k, 11) == 1;
    o << "  int n" << i + 1 << " = " << n << ";\n";
    o << "  int * a" << i + 1 << " = malloc(sizeof(int) * (n" << i + 1 << " > 0 ? n" << i + 1 << " : 1));\n";
    o << "  for (int i = 0; i < n" << i + 1 << "; i++) a" << i + 1 << "[i] = " << (mod10 ? "i % 10" : "i") << ";\n";
  }
  o << "  for (int it = 0; it <= " << iters << "; it++) {\n";
  o << "    int64_t t0 = now_ns();\n    int64_t r = (int64_t)" << fn << '(';
  for (size_t i = 1; i <= spec.inputs.size(); i++) o << (i > 1 ? ", " : "") << 'a' << i << ", n" << i;
  o << ");\n    int64_t t1 = now_ns();\n";
  o << "    printf(\"" << spec.name << ",%d,%lld,%lld\\n\", it, (long long)(t1 - t0), (long long)r);\n  }\n";
  o << "  return 0;\n}\n";
  return o.str();
}

std::string resolve_cc(const std::optional<std::string>& cc) {
  if (cc && !cc->empty()) return *cc;
  if (const char* e = std::getenv("PIPEC_CC"); e && *e) return e;
  return "cc";
}

bool compiler_available(const std::string& cc) {
  std::string cmd = cc + " --version > /dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

namespace {

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

struct TimedRun {
  bool ok = false;
  std::string error;
  std::vector<BenchLine> lines;
};

TimedRun build_and_run(const std::string& cc, const fs::path& dir, const std::string& tag, const std::string& fn_src,
                       const std::string& harness) {
  TimedRun r;
  fs::path f = dir / (tag + "_fn.c"), h = dir / (tag + "_main.c"), exe = dir / tag, log = dir / (tag + ".log");
  write_file(f, fn_src);
  write_file(h, harness);
  std::string cmd = cc + " -O2 -o " + quote(exe) + ' ' + quote(f) + ' ' + quote(h) + " > " + quote(log) + " 2>&1";
  if (std::system(cmd.c_str()) != 0) {
    r.error = "compile failed: " + read_file(log).value_or("");
    return r;
  }
  FILE* p = popen(quote(exe).c_str(), "r");
  if (!p) {
    r.error = "cannot run " + exe.string();
    return r;
  }
  char buf[512];
  while (std::fgets(buf, sizeof buf, p)) {
    std::string line(buf);
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    if (auto l = parse_bench_line(line)) r.lines.push_back(*l);
  }
  r.ok = pclose(p) == 0;
  if (!r.ok) r.error = "harness exited abnormally";
  return r;
}

std::pair<double, double> mean_sd(const std::vector<BenchLine>& ls) {
  std::vector<double> xs;
  for (const auto& l : ls)
    if (l.iter > 0) xs.push_back(static_cast<double>(l.ns));
  if (xs.empty()) return {0, 0};
  double m = 0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double v = 0;
  for (double x : xs) v += (x - m) * (x - m);
  return {m, xs.size() > 1 ? std::sqrt(v / static_cast<double>(xs.size() - 1)) : 0.0};
}

}  // namespace

std::string BenchReport::json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["pipeline"] = name;
  j["size"] = size;
  j["iterations"] = iterations;
  j["skipped"] = skipped;
  j["compiler"] = compiler;
  j["mean_ns"] = mean_ns;
  j["stddev_ns"] = stddev_ns;
  j["checksum"] = checksum;
  j["reference"] = reference;
  j["checksum_ok"] = checksum_ok;
  j["baseline_mean_ns"] = baseline_mean_ns ? nlohmann::json(*baseline_mean_ns) : nlohmann::json(nullptr);
  j["ratio_to_baseline"] =
      baseline_mean_ns && *baseline_mean_ns > 0 && iterations > 0 ? nlohmann::json(mean_ns / *baseline_mean_ns)
                                                                   : nlohmann::json(nullptr);
  j["notes"] = notes;
  return j.dump();
}

BenchReport bench_pipeline(const PipelineSpec& spec, const BenchOptions& opt) {
  BenchReport rep;
  rep.name = spec.name;
  rep.size = opt.size;
  rep.iterations = opt.iterations;
  rep.compiler = resolve_cc(opt.cc);
  rep.notes.push_back("one warm-up call, then timed calls; no sleep, CPU pinning or frequency calibration");
  if (spec.pipeline.term == Terminal::Collect) throw std::invalid_argument(spec.name + " prints its items; only folds are benchmarked");
  if (!compiler_available(rep.compiler)) {
    rep.skipped = true;
    rep.notes.push_back("compiler `" + rep.compiler + "` not available; skipped");
    return rep;
  }
  fs::path dir = opt.work_dir.empty() ? fs::temp_directory_path() / ("pipec_bench_" + spec.name) : opt.work_dir;
  fs::create_directories(dir);

  rep.reference = spec.reference(spec.make_inputs(opt.size)).checksum();
  TimedRun g = build_and_run(rep.compiler, dir, "gen", emit_pipeline(spec), harness_source(spec, opt.size, opt.iterations));
  if (!g.ok) throw std::runtime_error(spec.name + ": " + g.error);
  if (g.lines.size() != static_cast<size_t>(opt.iterations) + 1) throw std::runtime_error(spec.name + ": harness output truncated");
  rep.checksum_ok = true;
  for (const auto& l : g.lines) rep.checksum_ok = rep.checksum_ok && l.checksum == rep.reference;
  rep.checksum = g.lines.front().checksum;
  std::tie(rep.mean_ns, rep.stddev_ns) = mean_sd(g.lines);
  if (opt.iterations == 0) rep.notes.push_back("zero iterations: validation only");

  fs::path base = opt.baselines_dir.empty() ? fs::path() : opt.baselines_dir / (spec.name + ".c");
  if (!base.empty() && fs::exists(base)) {
    std::string fn = "baseline_" + spec.name;
    TimedRun b = build_and_run(rep.compiler, dir, "base", read_file(base).value_or(""),
                               harness_source(spec, opt.size, opt.iterations, fn));
    if (!b.ok) throw std::runtime_error(spec.name + " baseline: " + b.error);
    for (const auto& l : b.lines) rep.checksum_ok = rep.checksum_ok && l.checksum == rep.reference;
    rep.baseline_mean_ns = mean_sd(b.lines).first;
  } else {
    rep.notes.push_back("no handwritten baseline found");
  }
  return rep;
}

int cmd_bench(const Registry& reg, const std::string& name, const BenchOptions& opt, Io io) {
  const auto* s = lookup(reg, name, io);
  if (!s) return 2;
  BenchReport rep;
  try {
    rep = bench_pipeline(*s, opt);
  } catch (const std::exception& e) {
    io.err << e.what() << '\n';
    return 1;
  }
  if (rep.skipped) {
    io.out << s->name << ": skipped, compiler `" << rep.compiler << "` not available\n";
    return 0;
  }
  fs::create_directories(opt.reports_dir);
  std::ofstream(opt.reports_dir / "bench.jsonl", std::ios::app) << rep.json() << '\n';
  io.out << s->name << " size=" << rep.size << " iters=" << rep.iterations << " mean_ns=" << static_cast<int64_t>(rep.mean_ns)
         << " sd_ns=" << static_cast<int64_t>(rep.stddev_ns) << " checksum=" << rep.checksum
         << (rep.checksum_ok ? " ok" : " MISMATCH reference=" + std::to_string(rep.reference));
  if (rep.baseline_mean_ns && *rep.baseline_mean_ns > 0 && rep.iterations > 0)
    io.out << " ratio=" << rep.mean_ns / *rep.baseline_mean_ns;
  io.out << '\n';
  if (!rep.checksum_ok) {
    io.err << s->name << ": checksum mismatch\n";
    return 1;
  }
  return 0;
}

}  // namespace pc
