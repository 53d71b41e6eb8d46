#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "backend_ir/audit.hpp"
#include "backend_ir/emit_c.hpp"
#include "backend_ir/interp.hpp"
#include "stream_sugar/sugar.hpp"

using namespace bir;
using namespace ss;

namespace {

using Ints = std::vector<int64_t>;

Ints trace_ints(const InterpResult& r) {
  Ints out;
  for (const auto& s : r.trace) out.push_back(std::stoll(s));
  return out;
}

// Prints every leaf of every item and returns them in order.
Ints items(const Stream& s, const std::vector<std::vector<int64_t>>& arrays = {}) {
  Stm body = ss::iter([](const Item& x) {
    std::vector<Stm> ps;
    for (const auto& e : x.leaves()) ps.push_back(print(e.ty() == Ty::Bool ? int_of_bool(e) : e));
    Stm r = skip();
    for (const auto& p : ps) r = seq(r, p);
    return r;
  }, s);
  return trace_ints(interpret(body, arrays));
}

int64_t value(const Stm& s, const std::vector<std::vector<int64_t>>& arrays = {}) {
  auto r = interpret(s, arrays);
  REQUIRE(r.ret.has_value());
  return r.ret->i;
}

Exp sq(const Exp& x) { return x * x; }
Exp even(const Exp& x) { return (x % int_(2)) == int_(0); }

Stream bools(const Ints& xs) {
  return map([](const Exp& x) { return int_of_bool(x != int_(0)); }, of_int_array(xs));
}

CStream as_bools(const CStream& s) {
  return map([](const Exp& x) { return x != int_(0); }, s);
}

Ints chars(const std::string& s) {
  Ints r(s.begin(), s.end());
  r.push_back(0);
  return r;
}

Ints rle_ref(const Ints& bits) {
  Ints out;
  int64_t zeros = 0;
  for (auto b : bits) {
    if (b) {
      out.push_back(zeros);
      zeros = 0;
    } else if (++zeros == 255) {
      out.push_back(255);
      zeros = 0;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("producers") {
  CHECK(items(from_to(int_(1), int_(3))) == Ints{1, 2, 3});
  CHECK(items(from_to(int_(2), int_(1))).empty());
  CHECK(items(take(int_(4), iota(int_(1)))) == Ints{1, 2, 3, 4});
  CHECK(items(of_int_array({5, 6})) == Ints{5, 6});
  CHECK(items(of_arr(param_array(1)), {{7, 8, 9}}) == Ints{7, 8, 9});
  CHECK(items(of_arr(param_array(1)), {{}}).empty());
  CHECK(items(pull_array(int_(2), [](const Exp& i, const Consumer& k) { return k(i * int_(10)); })) ==
        Ints{0, 10, 20});
}

TEST_CASE("folds") {
  CHECK(value(sum(of_arr(param_array(1))), {{1, 2, 3, 4, 5}}) == 15);
  CHECK(value(sum(of_arr(param_array(1))), {{}}) == 0);
  CHECK(value(sum_long(of_int_array({2000000000, 2000000000}))) == 4000000000LL);
  CHECK(value(fold([](const Exp& a, const Exp& b) { return imax(a, b); }, int_(-1), of_int_array({3, 9, 2}))) == 9);
}

TEST_CASE("transformers") {
  auto one_to_six = [] { return from_to(int_(1), int_(6)); };
  CHECK(items(map(sq, from_to(int_(1), int_(3)))) == Ints{1, 4, 9});
  CHECK(items(filter(even, one_to_six())) == Ints{2, 4, 6});
  CHECK(items(drop(int_(2), one_to_six())) == Ints{3, 4, 5, 6});
  CHECK(items(drop(int_(9), one_to_six())).empty());
  CHECK(items(scan([](const Exp& a, const Exp& b) { return a + b; }, int_(0), from_to(int_(1), int_(3)))) ==
        Ints{1, 3, 6});
  CHECK(items(take_while([](const Exp& x) { return x < int_(3); }, one_to_six())) == Ints{1, 2});
  CHECK(items(take_while([](const Exp& x) { return x < int_(3); }, iota(int_(1)))) == Ints{1, 2});
  CHECK(items(drop_while([](const Exp& x) { return x < int_(3); }, of_int_array({1, 2, 3, 1}))) == Ints{3, 1});
  CHECK(items(take(int_(0), iota(int_(1)))).empty());
  CHECK(items(take(int_(9), from_to(int_(1), int_(3)))) == Ints{1, 2, 3});
  CHECK(items(take(int_(3), filter(even, iota(int_(1))))) == Ints{2, 4, 6});
  auto acc = map_accum(int_(0), [](const Exp& acc, const Exp& x, const auto& k) { return k(acc * int_(10) + x, acc + x); },
                       from_to(int_(1), int_(3)));
  CHECK(items(acc) == Ints{1, 12, 33});
}

TEST_CASE("zip") {
  auto add = [](const Exp& a, const Exp& b) { return a + b; };
  CHECK(items(zip_with_exp(add, of_int_array({1, 2, 3}), of_int_array({10, 20}))) == Ints{11, 22});
  CHECK(items(zip_raw(of_int_array({1, 2}), iota(int_(5)))) == Ints{1, 5, 2, 6});
  // both sides filtered: one side is linearized
  CHECK(items(zip_with_exp(add, filter(even, from_to(int_(1), int_(8))), filter(even, iota(int_(11))))) ==
        Ints{14, 18, 22, 26});
  // nested against nested
  auto nest = [] {
    return flat_map([](const Exp& x) { return from_to(x, x + int_(1)); }, from_to(int_(1), int_(3)));
  };
  CHECK(items(zip_raw(nest(), nest())) == Ints{1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4});
  CHECK(items(zip_raw(nest(), of_int_array({7, 8, 9}))) == Ints{1, 7, 2, 8, 2, 9});
  CHECK(items(zip_raw(of_int_array({7, 8, 9}), nest())) == Ints{7, 1, 8, 2, 9, 2});
}

TEST_CASE("flat_map") {
  auto inner = [](const Exp& x) { return from_to(x, x + int_(3)); };
  CHECK(items(take(int_(8), flat_map(inner, from_to(int_(1), int_(5))))) == Ints{1, 2, 3, 4, 2, 3, 4, 5});
  CHECK(items(flat_map([](const Exp& x) { return from_to(int_(1), x); }, of_int_array({0, 2, 0, 1}))) ==
        Ints{1, 2, 1});
  CHECK(items(take(int_(10), flat_map([](const Exp& x) { return from_to(x, x + int_(5)); }, iota(int_(1))))) ==
        Ints{1, 2, 3, 4, 5, 6, 2, 3, 4, 5});
  // doubly nested
  auto deep = flat_map([](const Exp& x) {
    return flat_map([x](const Exp& y) { return from_to(y, x); }, from_to(int_(1), x));
  }, from_to(int_(1), int_(3)));
  CHECK(items(deep) == Ints{1, 1, 2, 2, 1, 2, 3, 2, 3, 3});
}

TEST_CASE("diff") {
  CHECK(items(diff(of_int_array({3, 5, 9}))) == Ints{3, 2, 4});
  CHECK(items(diff(of_int_array({7}))) == Ints{7});
  CHECK(items(diff(of_int_array({}))).empty());
}

TEST_CASE("run-length coding") {
  CHECK(items(rle_encode(as_bools(of_int_array({0, 0, 1, 0, 1})))) == Ints{2, 1});
  CHECK(items(rle_encode(as_bools(of_int_array(Ints(255, 0))))) == Ints{255});
  CHECK(items(rle_encode(as_bools(of_int_array(Ints(256, 0))))) == Ints{255});
  CHECK(items(rle_decode(of_int_array({2, 1}))) == Ints{0, 0, 1, 0, 1});
  CHECK(items(rle_decode(of_int_array({255}))) == Ints(255, 0));
  CHECK(items(rle_decode(of_int_array({0}))) == Ints{1});
  Ints bits;
  for (int i = 0; i < 300; i++) bits.push_back(0);
  bits.push_back(1);
  bits.push_back(1);
  CHECK(items(rle_encode(as_bools(of_int_array(bits)))) == rle_ref(bits));
  CHECK(items(rle_decode(rle_encode(as_bools(of_int_array(bits))))) == bits);
}

TEST_CASE("mealy machines") {
  CHECK(items(parse_ints(of_int_array({'4', '2', ','}))) == Ints{42, ','});
  Monoid add{int_(0), [](const Exp& a, const Exp& b) { return a + b; }};
  Monoid mx{int_(INT32_MIN), [](const Exp& a, const Exp& b) { return imax(a, b); }};
  CHECK(items(group_by_aggregate(int_(','), add, parse_ints(of_int_array({'|'})))) == Ints{0, '|'});
  auto chunks = group_by_aggregate(int_(','), add, parse_ints(of_int_array(chars("100,200,300|400|500,600|700,800,900|1000"))));
  CHECK(items(chunks) == Ints{600, '|', 400, '|', 1100, '|', 2400, '|', 1000, 0});
  auto best = group_by_aggregate(int_('|'), mx, chunks);
  auto r = interpret(ss::iter([](const Item& p) { return print(p.first().exp()); }, best));
  CHECK(r.trace == std::vector<std::string>{"2400"});
}

TEST_CASE("structure of normal forms") {
  SessionScope scope;
  auto nested = flat_map([](const Exp& x) { return from_to(int_(1), x); }, of_int_array({1, 2}));
  auto rep = sc::nf_check(nested);
  CHECK(rep.ok);
  CHECK(rep.depth == 1);
  CHECK(rep.init_count == 2);
  CHECK(sc::describe(nested) == "Init(array)>Init(ref)>Nested[lin]{Init(ref)>Flat[lin]}");
  CHECK(sc::describe(filter(even, iota(int_(0)))) == "Init(ref)>Flat[nonlin]");
  CHECK(sc::describe(sc::linearize(filter(even, iota(int_(0))))) == "Init(ref)>Flat[lin]");
  CHECK(sc::describe(sc::linearize(nested)).find("Nested") == std::string::npos);
  CHECK(sc::complexity(nested).depth == 1);
  CHECK(sc::complexity(iota(int_(0))) < sc::complexity(filter(even, iota(int_(0)))));
  CHECK(sc::complexity(filter(even, iota(int_(0)))) < sc::complexity(nested));

  // a guard over a Nested stream lands on the trailing guard
  auto guarded = sc::guard(bool_(false), nested);
  auto c = emit_c(ss::iter([](const Item& x) { return print(x.exp()); }, guarded), {});
  CHECK(interpret(ss::iter([](const Item& x) { return print(x.exp()); }, guarded)).trace.empty());
  CHECK(c.find("false") != std::string::npos);
}

TEST_CASE("zipping linear streams needs no state machine") {
  SessionScope scope;
  Stm s = sum(zip_with_exp([](const Exp& a, const Exp& b) { return a * b; }, of_arr(param_array(1)),
                           of_arr(param_array(2))));
  std::string c = emit_c(s, {param_array(1), param_array(2)});
  CHECK(c.find(" = 7") == std::string::npos);
  CHECK(c.find("while") == c.rfind("while"));  // exactly one loop
  CHECK(value(s, {{1, 2, 3}, {4, 5, 6, 7}}) == 32);
}

TEST_CASE("zipping a nested stream uses the q machine") {
  SessionScope scope;
  // a linear side would simply be fused in; two nested sides force the machine
  auto nested = flat_map([](const Exp& x) { return from_to(int_(1), x); }, of_arr(param_array(1)));
  auto other = flat_map([](const Exp& x) { return from_to(x, x); }, of_arr(param_array(2)));
  Stm s = sum(zip_with_exp([](const Exp& a, const Exp& b) { return a + b; }, other, nested));
  std::string c = emit_c(s, {param_array(1), param_array(2)});
  for (const char* k : {"= 0;", "= 3;", "= 5;", "= 7;", "& 2) != 0", "== 3", "== 7"}) {
    INFO(k);
    CHECK(c.find(k) != std::string::npos);
  }
  // items: 1 1 2 1 2 3 ; zipped with 10 20 30 40 50
  CHECK(value(s, {{1, 2, 3}, {10, 20, 30, 40, 50}}) == 150 + 1 + 1 + 2 + 1 + 2);
  CHECK(grammar_audit(s).ok);
}

TEST_CASE("closure conversion allocates a cell per item leaf") {
  SessionScope scope;
  int cells = -1;
  Item shape = Item::pair(Item(int_(0)), Item(int_(0)));
  auto s = sc::closure_convert([](const Item& x) { return from_to(x.first().exp(), x.second().exp()); }, shape,
                               [&](const sc::ClosureConverted& cc) {
                                 cells = static_cast<int>(cc.item_cells.size());
                                 return sc::flat(cc.core);
                               });
  CHECK(sc::nf_check(s).ok);  // conversion happens when the Init spine is opened
  CHECK(cells == 2);
  auto nested = sc::closure_convert([](const Item&) {
    return flat_map([](const Exp& y) { return from_to(int_(1), y); }, from_to(int_(1), int_(2)));
  }, Item(int_(0)), [](const sc::ClosureConverted& cc) { return sc::flat(cc.core); });
  CHECK_THROWS(sc::nf_check(nested));
}

TEST_CASE("normal form holds after every raw operation") {
  int ops = 0, bad = 0;
  sc::set_op_observer([&](const char*, const Stream& s) {
    ops++;
    if (!sc::nf_check(s).ok) bad++;
  });
  {
    SessionScope scope;
    auto s = take(int_(5), zip_with_exp([](const Exp& a, const Exp& b) { return a - b; },
                                        flat_map([](const Exp& x) { return from_to(x, x + int_(2)); }, iota(int_(0))),
                                        filter(even, of_int_array({1, 2, 3, 4, 5, 6, 7, 8}))));
    CHECK(items(s) == Ints{-2, -3, -4, -7});
  }
  sc::set_op_observer(nullptr);
  CHECK(ops > 10);
  CHECK(bad == 0);
}

TEST_CASE("ex2 and the showcase pipeline") {
  SessionScope scope;
  Stm ex2 = sum(take(int_(10), filter([](const Exp& e) { return (e % int_(17)) > int_(7); }, map(sq, iota(int_(1))))));
  CHECK(value(ex2) == 853);
  CHECK(grammar_audit(ex2).ok);
  CHECK(hygiene_check(ex2).ok);

  auto l = map(sq, filter(even, take(int_(12), map(sq, of_int_array({0, 1, 2, 3})))));
  auto r = filter(even, flat_map([](const Exp& x) { return take(int_(3), iota(x + int_(1))); }, iota(int_(1))));
  Stm s = ss::iter([](const Item& p) { return seq(print(p.first().exp()), print(p.second().exp())); }, sc::zip_raw(l, r));
  CHECK(interpret(s).trace == std::vector<std::string>{"0", "2", "16", "4"});
  CHECK(grammar_audit(s).ok);
  CHECK(hygiene_check(s).ok);
}
