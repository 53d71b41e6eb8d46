// Executable skip-stream semantics over host values. A stream is a
// demand-driven coalgebra: observing it yields Done, or a step carrying an
// optional item, the new state and a resumption taking the next state.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace os {

// State and item values: scalars, pairs, optionals and opaque captures.
class Val {
 public:
  enum Kind { Unit, Int, Bool, Pair, None, Some, Opaque };

  Val() = default;
  static Val unit() { return Val(); }
  static Val i(int64_t v);
  static Val b(bool v);
  static Val pair(const Val& a, const Val& b);
  static Val none();
  static Val some(const Val& v);
  // Compared by identity; used to stash functions inside states.
  static Val opaque(std::shared_ptr<const void> p, std::string tag = "opaque");

  Kind kind() const { return kind_; }
  int64_t as_int() const;
  bool as_bool() const;
  const Val& fst() const;
  const Val& snd() const;
  bool is_some() const { return kind_ == Some; }
  const Val& value() const;  // payload of Some
  const std::shared_ptr<const void>& ptr() const { return ptr_; }

  bool operator==(const Val& o) const;
  bool operator!=(const Val& o) const { return !(*this == o); }
  uint64_t hash() const;
  std::string str() const;

 private:
  Kind kind_ = Unit;
  int64_t n_ = 0;
  std::shared_ptr<const std::pair<Val, Val>> kids_;  // Pair, Some (first)
  std::shared_ptr<const void> ptr_;
  std::string tag_;
};

Val tup(const Val& a, const Val& b, const Val& c);  // (a, (b, c))

class OStream;
using Resume = std::function<OStream(const Val&)>;

struct Step {
  std::optional<Val> item;
  Val state;
  Resume resume;
};

class OStream {
 public:
  using Obs = std::function<std::optional<Step>()>;
  OStream() = default;
  explicit OStream(Obs f) : f_(std::make_shared<Obs>(std::move(f))) {}
  std::optional<Step> observe() const;  // nullopt means Done
  static OStream done();
  static OStream step(Step st);  // replays a fixed observation

 private:
  std::shared_ptr<Obs> f_;
};

using OptVal = std::optional<Val>;
using UnrollFn = std::function<std::pair<OptVal, Val>(const Val&)>;
using Pred = std::function<bool(const Val&)>;
using MapFilterFn = std::function<std::pair<OptVal, Val>(const Val& z, const Val& a)>;
using FlatMapFn = std::function<OStream(const Val& z, const Val& a)>;
using StateFn = std::function<Val(const Val&)>;

OStream o_unroll(UnrollFn f, const Val& z0);
OStream o_init(const Val& z, const OStream& s);
OStream o_abstract(const OStream& s);  // state (z, z1) becomes z1
OStream o_adjust(StateFn to, StateFn from, const OStream& s);
OStream o_guard(Pred p, const OStream& s);
OStream o_map_filter(MapFilterFn f, const OStream& s);
OStream o_flat_map(FlatMapFn f, const OStream& s);
OStream o_zip(const OStream& s1, const OStream& s2);

// Isomorphisms used by the laws.
Val swap(const Val& p);
Val assoc_r(const Val& p);  // ((a,b),c) -> (a,(b,c))
Val assoc_l(const Val& p);  // (a,(b,c)) -> ((a,b),c)

// ---- traces ----
struct Event {
  enum Kind { Skip, Emit, End, FuelExhausted };
  Kind kind;
  Val item;
  Val state;
  bool operator==(const Event& o) const;
  std::string str() const;
};
using Trace = std::vector<Event>;

// At most fuel observations.
Trace run_trace(const OStream& s, int fuel);
// Emits only, at most fuel of them; a skip run longer than skip_fuel ends
// the trace with FuelExhausted.
Trace noskip_trace(const OStream& s, int fuel, int skip_fuel = -1);
std::vector<Val> items_of(const Trace& t);
std::string trace_str(const Trace& t);

struct Counterexample {
  Trace lhs, rhs;
  size_t index = 0;
};
struct EquivVerdict {
  bool holds = true;
  std::optional<Counterexample> counterexample;
};

// Strong: skip/emit positions, items and Done agree, up to fuel steps.
EquivVerdict strong_equiv(const OStream& a, const OStream& b, int fuel);
// Weak: skip-insensitive item sequences agree. Ending and running out of
// fuel after the same items count as agreement, since an effectively ended
// stream is weakly equal to Done.
EquivVerdict weak_equiv(const OStream& a, const OStream& b, int fuel);

// ---- linearization ----

// True if f produces nothing within fuel steps from z.
bool probably_ended(const UnrollFn& f, const Val& z, int fuel);

// unroll u z ⊳ guard g made linear: interior skips are folded away.
UnrollFn o_linearize_flat(UnrollFn u, Pred g, int fuel);

// Inner stream of a flat_map in unroll/guard/abstract form: from outer state
// z and item x, a private start state zp, a step on (zp, z) and a guard.
struct InnerSpec {
  std::function<Val(const Val& z, const Val& x)> zp0;
  UnrollFn step;  // on (zp, z)
  Pred grd;       // on (zp, z)
};

// unroll u1 z ⊳ guard g1 ⊳ flat_map inner ⊳ guard g3, as a single linear
// unroll over (Opt(inner config), z) with guard g0 on the outer component.
struct LinearNested {
  UnrollFn u0;
  Val z0;
  Pred g0;
  OStream stream() const;  // unroll u0 z0 ⊳ guard g0 ⊳ abstract
};
LinearNested o_linearize_nested(UnrollFn u1, const Val& z1, Pred g1, InnerSpec inner, Pred g3, int fuel);
// The same pipeline built directly from flat_map.
OStream o_nested_reference(UnrollFn u1, const Val& z1, Pred g1, InnerSpec inner, Pred g3);

}  // namespace os
