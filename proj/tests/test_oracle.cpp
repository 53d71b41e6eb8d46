#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle_semantics/laws.hpp"
#include "oracle_semantics/oracle.hpp"

using namespace os;

namespace {

std::vector<int64_t> ints(const std::vector<Val>& vs) {
  std::vector<int64_t> r;
  for (const auto& v : vs) r.push_back(v.as_int());
  return r;
}

OStream counting(int64_t from) {
  return o_unroll([](const Val& z) { return std::pair{OptVal(z), Val::i(z.as_int() + 1)}; }, Val::i(from));
}

// (x, y, w): emits x..y, then skips forever with w false.
UnrollFn u_nm() {
  return [](const Val& s) -> std::pair<OptVal, Val> {
    int64_t x = s.fst().as_int(), y = s.snd().fst().as_int();
    if (x <= y) return {Val::i(x), tup(Val::i(x + 1), Val::i(y), s.snd().snd())};
    return {std::nullopt, tup(Val::i(x), Val::i(y), Val::b(false))};
  };
}

bool flag_of(const Val& s) { return s.snd().snd().as_bool(); }

OStream from_to(int64_t a, int64_t b) { return o_guard(flag_of, o_unroll(u_nm(), tup(Val::i(a), Val::i(b), Val::b(true)))); }

OStream of_list(const std::vector<std::optional<int64_t>>& xs) {
  return o_unroll([xs](const Val& z) -> std::pair<OptVal, Val> {
    size_t i = static_cast<size_t>(z.as_int());
    if (i >= xs.size()) return {std::nullopt, Val::i(static_cast<int64_t>(xs.size()) + 1)};
    OptVal a;
    if (xs[i]) a = Val::i(*xs[i]);
    return {a, Val::i(z.as_int() + 1)};
  }, Val::i(0));
}

OStream bounded(const std::vector<std::optional<int64_t>>& xs) {
  int64_t n = static_cast<int64_t>(xs.size());
  // the guard sees the state after each step, so it fires one skip past the end
  return o_guard([n](const Val& z) { return z.as_int() <= n; }, of_list(xs));
}

}  // namespace

TEST_CASE("values") {
  CHECK(Val::pair(Val::i(1), Val::b(true)) == Val::pair(Val::i(1), Val::b(true)));
  CHECK(Val::some(Val::i(1)) != Val::none());
  auto p = std::make_shared<int>(3);
  CHECK(Val::opaque(p) == Val::opaque(p));
  CHECK(Val::opaque(p) != Val::opaque(std::make_shared<int>(3)));
  CHECK(Val::pair(Val::i(1), Val::i(2)).hash() == Val::pair(Val::i(1), Val::i(2)).hash());
  CHECK(tup(Val::i(1), Val::i(2), Val::i(3)).str() == "(1,(2,3))");
  CHECK_THROWS(Val::i(1).fst());
}

TEST_CASE("unroll") {
  Trace t = run_trace(counting(1), 4);
  CHECK(ints(items_of(t)) == std::vector<int64_t>{1, 2, 3, 4});
  CHECK(t.back().kind == Event::FuelExhausted);

  Trace nm = run_trace(o_unroll(u_nm(), tup(Val::i(1), Val::i(3), Val::b(true))), 6);
  CHECK(ints(items_of(nm)) == std::vector<int64_t>{1, 2, 3});
  CHECK(nm[3].kind == Event::Skip);
  CHECK(nm[4].kind == Event::Skip);
  CHECK_FALSE(flag_of(nm[4].state));

  Trace sk = run_trace(o_unroll([](const Val& z) { return std::pair{OptVal(), z}; }, Val::i(0)), 5);
  for (int i = 0; i < 5; i++) CHECK(sk[i].kind == Event::Skip);
}

TEST_CASE("init, abstract, adjust") {
  Trace t = run_trace(o_init(Val::i(9), counting(1)), 3);
  CHECK(t[0].state == Val::pair(Val::i(9), Val::i(2)));
  CHECK(t[1].state.fst() == Val::i(9));
  CHECK(strong_equiv(o_abstract(o_init(Val::i(9), counting(1))), counting(1), 30).holds);
  OStream pairs = o_unroll([](const Val& z) { return std::pair{OptVal(z.fst()), swap(z)}; }, Val::pair(Val::i(1), Val::i(2)));
  CHECK(strong_equiv(o_adjust(swap, swap, o_adjust(swap, swap, pairs)), pairs, 30).holds);
  Trace adj = run_trace(o_adjust(swap, swap, pairs), 2);
  CHECK(adj[0].state == Val::pair(Val::i(1), Val::i(2)));
}

TEST_CASE("guard") {
  // items 1, 2, 3, ... whose state is the item just produced
  OStream up = o_unroll([](const Val& z) { return std::pair{OptVal(Val::i(z.as_int() + 1)), Val::i(z.as_int() + 1)}; }, Val::i(0));
  Trace t = run_trace(o_guard([](const Val& z) { return z.as_int() <= 3; }, up), 10);
  CHECK(ints(items_of(t)) == std::vector<int64_t>{1, 2, 3});
  CHECK(t.back().kind == Event::End);
  CHECK(strong_equiv(o_guard([](const Val&) { return true; }, counting(1)), counting(1), 30).holds);
  OStream ended = o_unroll([](const Val& z) { return std::pair{OptVal(), z}; }, Val::i(0));
  Trace e = run_trace(o_guard([](const Val&) { return false; }, ended), 5);
  CHECK(e.size() == 1);
  CHECK(e[0].kind == Event::End);
}

TEST_CASE("map_filter") {
  MapFilterFn sq = [](const Val& z, const Val& a) { return std::pair{OptVal(Val::i(a.as_int() * a.as_int())), z}; };
  Trace t = run_trace(o_map_filter(sq, bounded({1, std::nullopt, 2, 3})), 10);
  CHECK(ints(items_of(t)) == std::vector<int64_t>{1, 4, 9});
  CHECK(t[1].kind == Event::Skip);

  MapFilterFn drop = [](const Val& z, const Val&) { return std::pair{OptVal(), z}; };
  Trace d = run_trace(o_map_filter(drop, bounded({1, 2})), 10);
  CHECK(items_of(d).empty());
  CHECK(d[0].kind == Event::Skip);
  CHECK(d[1].kind == Event::Skip);

  // diff keeps the previous item in an extra state component
  MapFilterFn diff = [](const Val& z, const Val& a) {
    return std::pair{OptVal(Val::i(a.as_int() - z.fst().as_int())), Val::pair(a, z.snd())};
  };
  OStream s = o_map_filter(diff, o_init(Val::i(0), bounded({3, 5, 9})));
  CHECK(ints(items_of(noskip_trace(s, 10))) == std::vector<int64_t>{3, 2, 4});
}

TEST_CASE("flat_map") {
  FlatMapFn f = [](const Val& z, const Val& x) {
    return o_abstract(o_adjust(swap, swap, o_init(z, from_to(x.as_int(), x.as_int() + 3))));
  };
  Trace t = noskip_trace(o_flat_map(f, from_to(1, 5)), 8);
  CHECK(ints(items_of(t)) == std::vector<int64_t>{1, 2, 3, 4, 2, 3, 4, 5});
  CHECK(ints(items_of(noskip_trace(o_flat_map(f, from_to(1, 5)), 100))).size() == 20);

  FlatMapFn empty = [](const Val&, const Val&) { return OStream::done(); };
  Trace e = run_trace(o_flat_map(empty, bounded({1, 2, 3})), 10);
  CHECK(items_of(e).empty());
  CHECK(e.size() == 4);  // one skip per outer item, then End
  CHECK(e.back().kind == Event::End);

  FlatMapFn single = [](const Val& z, const Val& x) {
    // stage 0 produces, stage 1 skips into stage 2 where the guard fires
    return o_abstract(o_guard([](const Val& s) { return s.fst().as_int() < 2; },
                              o_unroll([x](const Val& s) -> std::pair<OptVal, Val> {
                                int64_t st = s.fst().as_int();
                                OptVal y;
                                if (st == 0) y = Val::i(x.as_int() + 1);
                                return {y, Val::pair(Val::i(std::min<int64_t>(st + 1, 2)), s.snd())};
                              }, Val::pair(Val::i(0), z))));
  };
  MapFilterFn inc = [](const Val& z, const Val& a) { return std::pair{OptVal(Val::i(a.as_int() + 1)), z}; };
  CHECK(weak_equiv(o_flat_map(single, bounded({4, 5, 6})), o_map_filter(inc, bounded({4, 5, 6})), 20).holds);
}

TEST_CASE("zip") {
  Trace t = run_trace(o_zip(bounded({1, 2, 3}), bounded({4, 5, 6})), 10);
  auto its = items_of(t);
  REQUIRE(its.size() == 3);
  CHECK(its[0] == Val::pair(Val::i(1), Val::i(4)));
  CHECK(its[2] == Val::pair(Val::i(3), Val::i(6)));

  OStream a = bounded({1, std::nullopt, 2}), b = bounded({std::nullopt, 9, 8});
  auto expect = o_unroll([](const Val& z) -> std::pair<OptVal, Val> {
    if (z.as_int() == 0) return {Val::pair(Val::i(1), Val::i(9)), Val::i(1)};
    if (z.as_int() == 1) return {Val::pair(Val::i(2), Val::i(8)), Val::i(2)};
    return {std::nullopt, Val::i(3)};
  }, Val::i(0));
  CHECK(weak_equiv(o_zip(a, b), o_guard([](const Val& z) { return z.as_int() <= 2; }, expect), 20).holds);
  CHECK_FALSE(strong_equiv(o_zip(a, b), expect, 20).holds);
}

TEST_CASE("weak equivalence ignores skips but not items") {
  CHECK(weak_equiv(bounded({1, std::nullopt, 2}), bounded({1, 2}), 10).holds);
  CHECK_FALSE(strong_equiv(bounded({1, std::nullopt, 2}), bounded({1, 2}), 10).holds);
  auto v = weak_equiv(bounded({1, 2}), bounded({1, 3}), 10);
  REQUIRE_FALSE(v.holds);
  CHECK(v.counterexample->index == 1);
  // an effectively ended stream agrees with a finished one
  CHECK(weak_equiv(of_list({1, 2}), bounded({1, 2}), 10).holds);
}

TEST_CASE("flat linearization removes interior skips") {
  UnrollFn u = [](const Val& z) -> std::pair<OptVal, Val> {
    int64_t i = z.as_int();
    if (i >= 9) return {std::nullopt, z};
    return {i % 3 == 0 ? OptVal(Val::i(i)) : OptVal(), Val::i(i + 1)};
  };
  Pred g = [](const Val& z) { return z.as_int() < 9; };
  OStream ref = o_guard(g, o_unroll(u, Val::i(0)));
  OStream lin = o_guard(g, o_unroll(o_linearize_flat(u, g, 50), Val::i(0)));
  CHECK(weak_equiv(ref, lin, 50).holds);
  Trace t = run_trace(lin, 20);
  // every skip is terminal: nothing is produced after the first one
  bool skipped = false;
  for (const auto& e : t) {
    if (e.kind == Event::Skip) skipped = true;
    if (e.kind == Event::Emit) CHECK_FALSE(skipped);
  }
  CHECK(ints(items_of(t)) == std::vector<int64_t>{0, 3, 6});
}

TEST_CASE("nested linearization") {
  // outer: 1..4 with flag; inner: x copies of x, with a skip between items
  UnrollFn u1 = u_nm();
  Val z1 = tup(Val::i(1), Val::i(4), Val::b(true));
  InnerSpec in;
  in.zp0 = [](const Val&, const Val& x) { return Val::pair(Val::i(2 * x.as_int()), x); };
  in.step = [](const Val& s) -> std::pair<OptVal, Val> {
    int64_t c = s.fst().fst().as_int();
    Val x = s.fst().snd();
    if (c <= 0) return {std::nullopt, s};
    Val next = Val::pair(Val::pair(Val::i(c - 1), x), s.snd());
    return {c % 2 == 0 ? OptVal(x) : OptVal(), next};
  };
  in.grd = [](const Val& s) { return s.fst().fst().as_int() > 0; };
  Pred g3 = [](const Val&) { return true; };
  OStream ref = o_nested_reference(u1, z1, flag_of, in, g3);
  LinearNested lin = o_linearize_nested(u1, z1, flag_of, in, g3, 50);
  CHECK(ints(items_of(noskip_trace(ref, 50))) == std::vector<int64_t>{1, 2, 2, 3, 3, 3, 4, 4, 4, 4});
  CHECK(weak_equiv(ref, lin.stream(), 50).holds);

  // the guard only inspects the outer component
  Val stopped = tup(Val::i(5), Val::i(4), Val::b(false));
  CHECK_FALSE(lin.g0(Val::pair(Val::none(), stopped)));
  CHECK(lin.g0(Val::pair(Val::none(), z1)));

  InnerSpec none = in;
  none.zp0 = [](const Val&, const Val& x) { return Val::pair(Val::i(0), x); };
  LinearNested empty = o_linearize_nested(u1, z1, flag_of, none, g3, 50);
  CHECK(items_of(noskip_trace(empty.stream(), 50)).empty());
  CHECK(weak_equiv(o_nested_reference(u1, z1, flag_of, none, g3), empty.stream(), 50).holds);
}

TEST_CASE("law suite") {
  LawSuiteOptions opt;
  opt.instances = 100;
  auto rs = run_law_suite(opt);
  CHECK(rs.size() == static_cast<size_t>(law_count()));
  for (const auto& r : rs) {
    INFO(r.name);
    CHECK(r.instances == 100);
    CHECK(r.counterexamples == 0);
    CHECK(r.negative_detected > 0);
  }
  auto j = law_report_json(rs, opt);
  CHECK(j["passed"] == true);
  CHECK(j["laws"].size() == rs.size());
}
