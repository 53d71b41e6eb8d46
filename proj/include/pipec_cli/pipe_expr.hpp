// A small first-order description of pipelines with two interpretations:
// staged through the stream library into target code, and directly in the
// oracle semantics. Registry entries and the random corpora are written
// once as PipeExpr and checked by comparing the two.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "backend_ir/ir.hpp"
#include "oracle_semantics/oracle.hpp"
#include "stream_core/stream.hpp"

namespace pc {

// Scalar expressions over bound items. Var(0) is the innermost binding: the
// current item in map/filter, the left item in a zip (Var(1) the right one);
// enclosing flat_map items follow.
struct UExprNode;
using UExpr = std::shared_ptr<const UExprNode>;

struct UExprNode {
  enum Op { Lit, Var, Add, Sub, Mul, Div, Mod, Min, Max, Lt, Le, Gt, Ge, Eq, Ne, And, Or, Not, ToInt, Len };
  Op op = Lit;
  int64_t lit = 0;
  int var = 0;  // Var: binding index; Len: param index
  UExpr a, b;
};

UExpr lit(int64_t v);
UExpr var(int i);
UExpr bin(UExprNode::Op op, UExpr a, UExpr b);
UExpr not_u(UExpr a);
UExpr to_int(UExpr a);
UExpr len(int param);  // length of a param array
std::string show(const UExpr& e);

bir::Exp stage(const UExpr& e, const std::vector<bir::Exp>& env);
// Booleans are 0/1; arithmetic wraps like the interpreter. Len needs arrays.
int64_t host(const UExpr& e, const std::vector<int64_t>& env,
             const std::vector<std::vector<int64_t>>* arrays = nullptr);

struct PipeNode;
using PipeExpr = std::shared_ptr<const PipeNode>;

struct PipeNode {
  enum Kind {
    OfArr,      // param array `param` (1-based)
    OfList,     // static array
    Iota,       // from e1, unbounded
    FromTo,     // e1..e2 inclusive
    Map, Filter, TakeWhile, DropWhile,  // e1 over the item
    Take, Drop,                         // count e1, evaluated once
    ScanSum, Diff,
    FlatMap,    // inner pipeline `sub` sees the item as Var(0)
    Zip,        // e1 combines (Var(0)=left, Var(1)=right); null e1 keeps pairs
    RleEncode, RleDecode,
    ParseInts,  // chars -> (number, delimiter) pairs
    GroupBy,    // over pairs; `param` is the separator, `flag` selects max over sum
    Fst,
    Linearize,  // forces the linear form; the identity semantically
  };
  Kind kind = OfList;
  int param = 0;
  bool flag = false;
  std::vector<int64_t> vals;
  UExpr e1, e2;
  PipeExpr src, sub, right;
};

enum class Terminal { Sum, SumLong, Collect };

struct Pipeline {
  PipeExpr body;
  Terminal term = Terminal::Collect;
};

// ---- constructors, in pipeline order ----
PipeExpr of_arr(int param);
PipeExpr of_list(std::vector<int64_t> vals);
PipeExpr iota(UExpr from);
PipeExpr from_to(UExpr a, UExpr b);
PipeExpr map(PipeExpr s, UExpr f);
PipeExpr filter(PipeExpr s, UExpr p);
PipeExpr take_while(PipeExpr s, UExpr p);
PipeExpr drop_while(PipeExpr s, UExpr p);
PipeExpr take(PipeExpr s, UExpr n);
PipeExpr drop(PipeExpr s, UExpr n);
PipeExpr scan_sum(PipeExpr s);
PipeExpr diff(PipeExpr s);
PipeExpr flat_map(PipeExpr s, PipeExpr inner);
PipeExpr zip(PipeExpr l, PipeExpr r, UExpr f = nullptr);
PipeExpr rle_encode(PipeExpr s);
PipeExpr rle_decode(PipeExpr s);
PipeExpr parse_ints(PipeExpr s);
PipeExpr group_by(PipeExpr s, int64_t sep, bool max);
PipeExpr fst(PipeExpr s);
PipeExpr linearize(PipeExpr s);

std::string show(const PipeExpr& p);
std::string show(const Pipeline& p);
// Largest param index used, 0 if none.
int arity(const PipeExpr& p);
bool has_nested(const PipeExpr& p);

// ---- staged interpretation ----
sc::Stream build_stream(const PipeExpr& p, const std::vector<bir::Exp>& env = {});
bir::Stm build_stm(const Pipeline& p);
std::vector<bir::ArrVar> params_of(const Pipeline& p);

// ---- oracle interpretation ----
os::OStream oracle_stream(const PipeExpr& p, const std::vector<std::vector<int64_t>>& arrays,
                          const std::vector<int64_t>& env = {});

struct Outcome {
  std::optional<int64_t> value;  // folds
  std::vector<int64_t> items;    // Collect: leaves of every item, in order
  bool operator==(const Outcome& o) const { return value == o.value && items == o.items; }
  int64_t checksum() const;
  std::string str(size_t max_items = 16) const;
};

// Runs the oracle to completion, within max_items items.
Outcome oracle_run(const Pipeline& p, const std::vector<std::vector<int64_t>>& arrays,
                   int64_t max_items = 50'000'000);
// Interprets the staged code.
Outcome interp_run(const Pipeline& p, const std::vector<std::vector<int64_t>>& arrays,
                   uint64_t step_budget = 2'000'000'000ULL);

}  // namespace pc
