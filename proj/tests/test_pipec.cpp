#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "backend_ir/audit.hpp"
#include "backend_ir/c_normalize.hpp"
#include "backend_ir/interp.hpp"
#include "pipec_cli/commands.hpp"
#include "pipec_cli/corpus.hpp"

using namespace pc;
namespace fs = std::filesystem;
using O = UExprNode;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path source_dir() { return PIPEC_SOURCE_DIR; }

fs::path scratch(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("pipec_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

struct Capture {
  std::ostringstream out, err;
  Io io() { return Io{out, err}; }
};

}  // namespace

TEST_CASE("scalar expressions stage and evaluate alike") {
  std::vector<UExpr> es = {
      bin(O::Add, var(0), lit(3)),
      bin(O::Mod, bin(O::Mul, var(0), var(1)), lit(7)),
      bin(O::Max, bin(O::Sub, var(1), var(0)), lit(-2)),
      to_int(bin(O::And, bin(O::Lt, var(0), lit(5)), not_u(bin(O::Eq, var(1), lit(2))))),
      to_int(bin(O::Or, bin(O::Ge, var(0), var(1)), bin(O::Ne, var(0), lit(0)))),
      bin(O::Div, var(0), lit(-3)),
  };
  for (const auto& e : es) {
    for (int64_t a : {-7, 0, 2, 9}) {
      for (int64_t b : {-1, 2, 11}) {
        bir::SessionScope scope;
        bir::Exp staged = stage(e, {bir::int_(a), bir::int_(b)});
        CHECK_MESSAGE(bir::eval_closed(staged).i == host(e, {a, b}), show(e));
      }
    }
  }
  CHECK_THROWS(host(bin(O::Mod, var(0), lit(0)), {3}));
  CHECK_THROWS(host(var(2), {1}));
  std::vector<std::vector<int64_t>> arrays = {{1, 2, 3}};
  CHECK(host(len(1), {}, &arrays) == 3);
  CHECK_THROWS(host(len(1), {}));
}

TEST_CASE("registry holds the benchmark suite and showcases") {
  const auto& reg = builtin_registry();
  CHECK(benchmark_names().size() == 13);
  for (const auto& n : benchmark_names()) {
    const auto* s = reg.find(n);
    REQUIRE_MESSAGE(s, n);
    CHECK(s->benchmark);
    CHECK(s->pipeline.term == Terminal::SumLong);
  }
  for (const char* n : {"ex2", "complexZip", "rle", "grouping"}) CHECK(reg.find(n));
  CHECK(reg.all().size() == 17);
  CHECK(reg.find("nope") == nullptr);
  CHECK_THROWS_AS(reg.at("nope"), std::out_of_range);

  Capture c;
  CHECK(cmd_list(reg, c.io()) == 0);
  for (const auto& n : benchmark_names()) CHECK(c.out.str().find(n + "  [bench]") != std::string::npos);
}

TEST_CASE("registration faults on duplicates and an empty registry lists nothing") {
  Registry r;
  CHECK(r.empty());
  Capture c;
  CHECK(cmd_list(r, c.io()) == 0);
  CHECK(c.out.str().empty());
  PipelineSpec s;
  s.name = "x";
  s.pipeline = Pipeline{of_list({1}), Terminal::Sum};
  r.add(s);
  CHECK_THROWS_AS(r.add(s), std::logic_error);
}

TEST_CASE("input wiring and fill rules follow the benchmark table") {
  const auto& reg = builtin_registry();
  using K = InputKind;
  CHECK(reg.at("cart").inputs == std::vector<K>{K::VHi, K::VLo});
  CHECK(reg.at("dotProduct").inputs == std::vector<K>{K::VHi, K::VHi});
  CHECK(reg.at("decode").inputs == std::vector<K>{K::V, K::V});
  CHECK(reg.at("flatMapAfterZip").inputs == std::vector<K>{K::VFaZ, K::VFaZ});
  CHECK(reg.at("zipAfterFlatMap").inputs == std::vector<K>{K::VZaF, K::VZaF});
  CHECK(reg.at("zipFlatMapFlatMap").inputs == std::vector<K>{K::V, K::VLo});

  CHECK(input_length(K::VLo, 1000) == 10);
  CHECK(input_length(K::VLo, 3) == 3);
  CHECK(input_length(K::VFaZ, 10000) == 100);
  CHECK(input_length(K::VFaZ, 10001) == 101);
  CHECK(input_length(K::VFaZ, 0) == 0);
  CHECK(make_input(K::V, 12) == std::vector<int64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1});
  CHECK(make_input(K::VZaF, 4) == std::vector<int64_t>{0, 1, 2, 3});
  // pure in the index
  CHECK(input_fill(K::VHi, 123456) == input_fill(K::VHi, 123456));
}

TEST_CASE("run interprets the emitted code and matches the reference") {
  const auto& reg = builtin_registry();
  RunResult r = run_pipeline(reg.at("sum"), 100);
  REQUIRE(r.interp.value);
  CHECK(*r.interp.value == 450);
  CHECK(r.matches());

  for (const auto& s : reg.all()) {
    if (s.inputs.empty()) continue;
    RunResult z = run_pipeline(s, 0);
    CHECK_MESSAGE(z.matches(), s.name);
    if (z.interp.value) CHECK_MESSAGE(*z.interp.value == 0, s.name);
    else CHECK_MESSAGE(z.interp.items.empty(), s.name);
  }

  Capture c;
  CHECK(cmd_run(reg, "sum", 100, c.io()) == 0);
  CHECK(c.out.str().find("value=450") != std::string::npos);
  CHECK(cmd_run(reg, "missing", 10, c.io()) == 2);
}

TEST_CASE("decode on small byte arrays agrees with the oracle") {
  const auto& p = builtin_registry().at("decode").pipeline;
  std::vector<Arrays> cases = {{{0}, {3}}, {{2, 255, 1}, {0, 0, 0, 4}}, {{255}, {255}}, {{}, {5}}, {{7, 1}, {2, 2, 2}}};
  for (const auto& a : cases) {
    Outcome o = oracle_run(p, a);
    CHECK(interp_run(p, a) == o);
    CHECK(builtin_registry().at("decode").reference(a) == o);
  }
  // [2] decodes to 0 0 1, [0 0 0 4] to 1 1 1 0 0 0 0 1; the zip stops after three
  CHECK(*oracle_run(p, {{2}, {0, 0, 0, 4}}).value == 3);
}

TEST_CASE("emit is deterministic and shaped as expected") {
  const auto& reg = builtin_registry();
  for (uint64_t seed : {0ULL, 7ULL}) CHECK(emit_pipeline(reg.at("zipFlatMapFlatMap"), seed) == emit_pipeline(reg.at("zipFlatMapFlatMap"), seed));

  // dot product: one counted loop, no inner loop
  {
    bir::SessionScope scope;
    auto a = bir::grammar_audit(build_stm(reg.at("dotProduct").pipeline));
    CHECK(a.ok);
    CHECK(a.loop_depth_max == 1);
    CHECK(a.node_counts["while"] == 1);
  }

  CHECK(bir::alpha_compare_c(slurp(source_dir() / "tests/data/ex2_listing.c"), emit_pipeline(reg.at("ex2"))).equal);
  std::string off = slurp(source_dir() / "tests/data/ex2_listing.c");
  off.replace(off.find("17"), 2, "19");
  CHECK_FALSE(bir::alpha_compare_c(off, emit_pipeline(reg.at("ex2"))).equal);

  fs::path d = scratch("emit");
  Capture c;
  CHECK(cmd_emit(reg, "sum", 3, d / "sum.c", c.io()) == 0);
  CHECK(slurp(d / "sum.c") == emit_pipeline(reg.at("sum"), 3));
  CHECK(cmd_emit(reg, "nope", 0, std::nullopt, c.io()) == 2);
}

TEST_CASE("goldens match and drift is reported") {
  const auto& reg = builtin_registry();
  Capture c;
  CHECK(cmd_goldens(reg, source_dir() / "goldens", false, c.io()) == 0);

  fs::path d = scratch("goldens");
  CHECK(cmd_goldens(reg, d, false, c.io()) == 1);  // all missing
  CHECK(cmd_goldens(reg, d, true, c.io()) == 0);
  CHECK(fs::exists(golden_path(d, "cart")));
  CHECK(cmd_goldens(reg, d, false, c.io()) == 0);

  std::string g = slurp(golden_path(d, "sum"));
  g.replace(g.find("v_1 + "), 6, "v_1 - ");
  std::ofstream(golden_path(d, "sum")) << g;
  Capture c2;
  CHECK(cmd_goldens(reg, d, false, c2.io()) == 1);
  CHECK(c2.out.str().find("sum: DRIFT") != std::string::npos);
  CHECK(c2.out.str().find("cart: match") != std::string::npos);
}

TEST_CASE("check runs laws and the oracle corpus") {
  const auto& reg = builtin_registry();
  CheckOptions o;
  o.instances = 10;
  o.corpus = 20;
  o.sizes = {0, 5};
  Capture c;
  CHECK(cmd_check(reg, o, c.io()) == 0);
  CHECK(c.out.str().find("check: ok") != std::string::npos);

  Capture z;
  o.fuel = 0;
  CHECK(cmd_check(reg, o, z.io()) == 0);
  CHECK(z.err.str().find("warning") != std::string::npos);
  CHECK(z.out.str().find("pass (vacuous)") != std::string::npos);

  Capture b;
  o.fuel = 50;
  o.inject_broken = 3;
  CHECK(cmd_check(reg, o, b.io()) == 1);
  CHECK(b.out.str().find("law 3 map-init: FAIL") != std::string::npos);
  CHECK(b.out.str().find("counterexample at step") != std::string::npos);
}

TEST_CASE("bench CSV lines") {
  BenchLine l{"cart", 3, 123456, -42};
  CHECK(format_bench_line(l) == "cart,3,123456,-42");
  auto p = parse_bench_line("cart,3,123456,-42");
  REQUIRE(p);
  CHECK(p->name == "cart");
  CHECK(p->iter == 3);
  CHECK(p->ns == 123456);
  CHECK(p->checksum == -42);
  for (const char* bad : {"", "cart,3,1", "cart,x,1,2", "cart,1,2,3,4", ",1,2,3", "cart,-1,2,3", "cart,1,2,3z"})
    CHECK_FALSE(parse_bench_line(bad));
}

TEST_CASE("bench harness source") {
  const auto& s = builtin_registry().at("cart");
  std::string h = harness_source(s, 100, 4);
  CHECK(h.find("int64_t fn(const int * a1, int n1, const int * a2, int n2);") != std::string::npos);
  CHECK(h.find("int n1 = 100;") != std::string::npos);
  CHECK(h.find("int n2 = 10;") != std::string::npos);
  CHECK(h.find("i % 10") != std::string::npos);
  CHECK(h.find("it <= 4") != std::string::npos);
  CHECK(h.find("\"cart,%d,%lld,%lld\\n\"") != std::string::npos);
  CHECK(harness_source(builtin_registry().at("flatMapAfterZip"), 100, 1).find("a1[i] = i;") != std::string::npos);
}

TEST_CASE("compiler resolution") {
  CHECK(resolve_cc(std::string("clang")) == "clang");
  setenv("PIPEC_CC", "gcc-from-env", 1);
  CHECK(resolve_cc(std::nullopt) == "gcc-from-env");
  unsetenv("PIPEC_CC");
  CHECK(resolve_cc(std::nullopt) == "cc");
  CHECK_FALSE(compiler_available("/nonexistent/cc"));

  BenchOptions o;
  o.cc = "/nonexistent/cc";
  o.size = 10;
  o.reports_dir = scratch("skip");
  auto rep = bench_pipeline(builtin_registry().at("sum"), o);
  CHECK(rep.skipped);
  Capture c;
  CHECK(cmd_bench(builtin_registry(), "sum", o, c.io()) == 0);
  CHECK(c.out.str().find("skipped") != std::string::npos);
  CHECK_THROWS(bench_pipeline(builtin_registry().at("rle"), o));
}

TEST_CASE("bench compiles, validates checksums and reports") {
  if (!compiler_available(resolve_cc(std::nullopt))) {
    MESSAGE("no C compiler; compile path not exercised");
    return;
  }
  const auto& reg = builtin_registry();
  fs::path d = scratch("bench");
  BenchOptions o;
  o.size = 1000;
  o.iterations = 3;
  o.work_dir = d / "work";
  o.reports_dir = d / "reports";
  for (const char* n : {"sum", "cart", "decode", "zipFlatMapFlatMap"}) {
    auto rep = bench_pipeline(reg.at(n), o);
    CHECK_MESSAGE(rep.checksum_ok, n);
    CHECK(rep.checksum == reg.at(n).reference(reg.at(n).make_inputs(1000)).checksum());
    CHECK(rep.mean_ns > 0);
  }
  // a baseline next to the generated code: same symbol convention
  fs::create_directories(d / "base");
  std::ofstream(d / "base" / "sum.c") << "#include <stdint.h>\n"
                                         "int64_t baseline_sum(const int * a, int n) {\n"
                                         "  int64_t s = 0;\n  for (int i = 0; i < n; i++) s += a[i];\n  return s;\n}\n";
  o.baselines_dir = d / "base";
  auto rep = bench_pipeline(reg.at("sum"), o);
  CHECK(rep.checksum_ok);
  REQUIRE(rep.baseline_mean_ns);
  CHECK(*rep.baseline_mean_ns > 0);

  o.iterations = 0;
  Capture c;
  CHECK(cmd_bench(reg, "sum", o, c.io()) == 0);
  std::string jl = slurp(o.reports_dir / "bench.jsonl");
  CHECK(jl.find("\"schema\":1") != std::string::npos);
  CHECK(jl.find("\"pipeline\":\"sum\"") != std::string::npos);
  CHECK(jl.find("validation only") != std::string::npos);
}

TEST_CASE("audits over the registry") {
  for (const auto& s : builtin_registry().all()) {
    auto f = fusion_audit(s.pipeline);
    CHECK_MESSAGE(f.ok, s.name, f.violations.empty() ? "" : f.violations.front());
    auto nf = nf_audit(s.pipeline);
    CHECK_MESSAGE(nf.ok(), s.name, nf.first_failure);
  }
  bir::SessionScope scope;
  CHECK_FALSE(has_q_machine(build_stm(builtin_registry().at("cart").pipeline)));
  Pipeline lin{linearize(flat_map(of_arr(1), from_to(lit(0), var(0)))), Terminal::Sum};
  CHECK(has_q_machine(build_stm(lin)));
}

TEST_CASE("the fusion audit rejects calls and loop allocations") {
  CHECK(scan_c_constructs("int fn(){ while (1) { if (x) printf(\"%d\\n\", x); } return 0; }").empty());
  auto v = scan_c_constructs("int fn(){ /* g() */ return g(1); }");
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "call: g");
  CHECK(scan_c_constructs("void fn(){ struct s q; }") == std::vector<std::string>{"construct: struct"});
  CHECK(scan_c_constructs("void fn(){ int *p = malloc(4); }").size() == 2);

  bir::SessionScope scope;
  bir::Stm bad = bir::while_(bir::bool_(false), bir::new_uarray(bir::Ty::Int, 3, [](const bir::ArrVar&) { return bir::skip(); }));
  CHECK_FALSE(bir::grammar_audit(bad).ok);
  bir::Stm ok = bir::while_(bir::bool_(false), bir::new_static_array(bir::Ty::Int, {1, 2}, [](const bir::ArrVar&) { return bir::skip(); }));
  CHECK(bir::grammar_audit(ok).ok);
}

TEST_CASE("random corpora agree with the oracle") {
  for (const auto& c : finite_corpus(11, 60)) CHECK_MESSAGE(oracle_run(c.pipeline, c.inputs) == interp_run(c.pipeline, c.inputs), show(c.pipeline));
  for (const auto& c : nested_corpus(11, 20)) {
    CHECK_MESSAGE(oracle_run(c.pipeline, c.inputs) == interp_run(c.pipeline, c.inputs), show(c.pipeline));
    bir::SessionScope scope;
    CHECK(has_q_machine(build_stm(c.pipeline)));
  }
  CHECK(show(finite_corpus(5, 3)[2].pipeline) == show(finite_corpus(5, 3)[2].pipeline));
}

TEST_CASE("outcome checksum") {
  Outcome v;
  v.value = 42;
  CHECK(v.checksum() == 42);
  Outcome a, b;
  a.items = {1, 2, 3};
  b.items = {3, 2, 1};
  CHECK(a.checksum() != b.checksum());
  CHECK(a.str() == "items[3]=1 2 3");
}
