#include "oracle_semantics/oracle.hpp"

#include <sstream>
#include <stdexcept>

namespace os {

// ---- Val ----

Val Val::i(int64_t v) {
  Val r;
  r.kind_ = Int;
  r.n_ = v;
  return r;
}

Val Val::b(bool v) {
  Val r;
  r.kind_ = Bool;
  r.n_ = v ? 1 : 0;
  return r;
}

Val Val::pair(const Val& a, const Val& b) {
  Val r;
  r.kind_ = Pair;
  r.kids_ = std::make_shared<const std::pair<Val, Val>>(a, b);
  return r;
}

Val Val::none() {
  Val r;
  r.kind_ = None;
  return r;
}

Val Val::some(const Val& v) {
  Val r;
  r.kind_ = Some;
  r.kids_ = std::make_shared<const std::pair<Val, Val>>(v, Val());
  return r;
}

Val Val::opaque(std::shared_ptr<const void> p, std::string tag) {
  Val r;
  r.kind_ = Opaque;
  r.ptr_ = std::move(p);
  r.tag_ = std::move(tag);
  return r;
}

int64_t Val::as_int() const {
  if (kind_ != Int) throw std::logic_error("Val: not an int: " + str());
  return n_;
}

bool Val::as_bool() const {
  if (kind_ != Bool) throw std::logic_error("Val: not a bool: " + str());
  return n_ != 0;
}

const Val& Val::fst() const {
  if (kind_ != Pair) throw std::logic_error("Val: not a pair: " + str());
  return kids_->first;
}

const Val& Val::snd() const {
  if (kind_ != Pair) throw std::logic_error("Val: not a pair: " + str());
  return kids_->second;
}

const Val& Val::value() const {
  if (kind_ != Some) throw std::logic_error("Val: not a some: " + str());
  return kids_->first;
}

bool Val::operator==(const Val& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Unit:
    case None:
      return true;
    case Int:
    case Bool:
      return n_ == o.n_;
    case Pair:
      return kids_->first == o.kids_->first && kids_->second == o.kids_->second;
    case Some:
      return kids_->first == o.kids_->first;
    case Opaque:
      return ptr_ == o.ptr_;
  }
  return false;
}

namespace {
uint64_t mix(uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}
}  // namespace

uint64_t Val::hash() const {
  uint64_t h = mix(static_cast<uint64_t>(kind_) + 0x9e37);
  switch (kind_) {
    case Int:
    case Bool:
      return mix(h ^ static_cast<uint64_t>(n_));
    case Pair:
      return mix(h ^ kids_->first.hash() * 31 ^ kids_->second.hash());
    case Some:
      return mix(h ^ kids_->first.hash());
    case Opaque:
      return mix(h ^ reinterpret_cast<uintptr_t>(ptr_.get()));
    default:
      return h;
  }
}

std::string Val::str() const {
  switch (kind_) {
    case Unit: return "()";
    case Int: return std::to_string(n_);
    case Bool: return n_ ? "true" : "false";
    case Pair: return "(" + kids_->first.str() + "," + kids_->second.str() + ")";
    case None: return "none";
    case Some: return "some " + kids_->first.str();
    case Opaque: return "<" + tag_ + ">";
  }
  return "?";
}

Val tup(const Val& a, const Val& b, const Val& c) { return Val::pair(a, Val::pair(b, c)); }

// ---- streams ----

std::optional<Step> OStream::observe() const {
  if (!f_) return std::nullopt;
  return (*f_)();
}

OStream OStream::done() { return OStream(); }

OStream OStream::step(Step st) {
  return OStream([st] { return std::optional<Step>(st); });
}

OStream o_unroll(UnrollFn f, const Val& z0) {
  return OStream([f, z0]() -> std::optional<Step> {
    auto [a, z] = f(z0);
    return Step{a, z, [f](const Val& z1) { return o_unroll(f, z1); }};
  });
}

OStream o_init(const Val& z, const OStream& s) {
  return OStream([z, s]() -> std::optional<Step> {
    auto st = s.observe();
    if (!st) return std::nullopt;
    Resume t = st->resume;
    return Step{st->item, Val::pair(z, st->state), [t](const Val& p) { return o_init(p.fst(), t(p.snd())); }};
  });
}

OStream o_abstract(const OStream& s) {
  return OStream([s]() -> std::optional<Step> {
    auto st = s.observe();
    if (!st) return std::nullopt;
    Val hidden = st->state.fst();
    Resume t = st->resume;
    return Step{st->item, st->state.snd(), [hidden, t](const Val& z1) { return o_abstract(t(Val::pair(hidden, z1))); }};
  });
}

OStream o_adjust(StateFn to, StateFn from, const OStream& s) {
  return OStream([to, from, s]() -> std::optional<Step> {
    auto st = s.observe();
    if (!st) return std::nullopt;
    Resume t = st->resume;
    return Step{st->item, to(st->state), [to, from, t](const Val& z) { return o_adjust(to, from, t(from(z))); }};
  });
}

OStream o_guard(Pred p, const OStream& s) {
  return OStream([p, s]() -> std::optional<Step> {
    auto st = s.observe();
    if (!st || !p(st->state)) return std::nullopt;
    Resume t = st->resume;
    return Step{st->item, st->state, [p, t](const Val& z) { return o_guard(p, t(z)); }};
  });
}

OStream o_map_filter(MapFilterFn f, const OStream& s) {
  return OStream([f, s]() -> std::optional<Step> {
    auto st = s.observe();
    if (!st) return std::nullopt;
    Resume t = st->resume;
    Resume k = [f, t](const Val& z) { return o_map_filter(f, t(z)); };
    if (!st->item) return Step{std::nullopt, st->state, k};
    auto [b, z1] = f(st->state, *st->item);
    return Step{b, z1, k};
  });
}

namespace {

OStream fm_outer(const FlatMapFn& f, const OStream& s);

// Inner mode: the inner stream, the latest outer state and the outer
// continuation to resume once the inner stream is done.
OStream fm_inner(const FlatMapFn& f, const OStream& in, const Val& zs, const Resume& t) {
  return OStream([f, in, zs, t]() -> std::optional<Step> {
    auto st = in.observe();
    if (!st) return Step{std::nullopt, zs, [f, t](const Val& z) { return fm_outer(f, t(z)); }};
    Resume ti = st->resume;
    return Step{st->item, st->state, [f, ti, t](const Val& z) { return fm_inner(f, ti(z), z, t); }};
  });
}

OStream fm_outer(const FlatMapFn& f, const OStream& s) {
  return OStream([f, s]() -> std::optional<Step> {
    auto st = s.observe();
    if (!st) return std::nullopt;
    Resume t = st->resume;
    if (!st->item) return Step{std::nullopt, st->state, [f, t](const Val& z) { return fm_outer(f, t(z)); }};
    return fm_inner(f, f(st->state, *st->item), st->state, t).observe();
  });
}

}  // namespace

OStream o_flat_map(FlatMapFn f, const OStream& s) { return fm_outer(f, s); }

OStream o_zip(const OStream& s1, const OStream& s2) {
  return OStream([s1, s2]() -> std::optional<Step> {
    auto a = s1.observe();
    if (!a) return std::nullopt;
    auto b = s2.observe();
    if (!b) return std::nullopt;
    Val z = Val::pair(a->state, b->state);
    Resume t1 = a->resume, t2 = b->resume;
    // A side that produced while the other skipped keeps its observation.
    if (a->item && !b->item) {
      Step keep = *a;
      t1 = [keep](const Val&) { return OStream::step(keep); };
    } else if (!a->item && b->item) {
      Step keep = *b;
      t2 = [keep](const Val&) { return OStream::step(keep); };
    }
    OptVal item;
    if (a->item && b->item) item = Val::pair(*a->item, *b->item);
    return Step{item, z, [t1, t2](const Val& zz) { return o_zip(t1(zz.fst()), t2(zz.snd())); }};
  });
}

Val swap(const Val& p) { return Val::pair(p.snd(), p.fst()); }
Val assoc_r(const Val& p) { return Val::pair(p.fst().fst(), Val::pair(p.fst().snd(), p.snd())); }
Val assoc_l(const Val& p) { return Val::pair(Val::pair(p.fst(), p.snd().fst()), p.snd().snd()); }

// ---- traces ----

bool Event::operator==(const Event& o) const {
  if (kind != o.kind) return false;
  return kind != Emit || item == o.item;
}

std::string Event::str() const {
  switch (kind) {
    case Skip: return "skip";
    case Emit: return item.str();
    case End: return "end";
    case FuelExhausted: return "fuel";
  }
  return "?";
}

Trace run_trace(const OStream& s0, int fuel) {
  Trace t;
  OStream s = s0;
  for (int i = 0; i < fuel; i++) {
    auto st = s.observe();
    if (!st) {
      t.push_back({Event::End, Val(), Val()});
      return t;
    }
    if (st->item)
      t.push_back({Event::Emit, *st->item, st->state});
    else
      t.push_back({Event::Skip, Val(), st->state});
    s = st->resume(st->state);
  }
  t.push_back({Event::FuelExhausted, Val(), Val()});
  return t;
}

Trace noskip_trace(const OStream& s0, int fuel, int skip_fuel) {
  if (skip_fuel < 0) skip_fuel = 20 * fuel + 50;
  Trace t;
  OStream s = s0;
  int emitted = 0, skips = 0;
  while (emitted < fuel) {
    auto st = s.observe();
    if (!st) {
      t.push_back({Event::End, Val(), Val()});
      return t;
    }
    if (st->item) {
      t.push_back({Event::Emit, *st->item, st->state});
      emitted++;
      skips = 0;
    } else if (++skips > skip_fuel) {
      break;
    }
    s = st->resume(st->state);
  }
  t.push_back({Event::FuelExhausted, Val(), Val()});
  return t;
}

std::vector<Val> items_of(const Trace& t) {
  std::vector<Val> r;
  for (const auto& e : t)
    if (e.kind == Event::Emit) r.push_back(e.item);
  return r;
}

std::string trace_str(const Trace& t) {
  std::string r;
  for (const auto& e : t) {
    if (!r.empty()) r += " ";
    r += e.str();
  }
  return r;
}

namespace {
bool terminal(const Event& e) { return e.kind == Event::End || e.kind == Event::FuelExhausted; }

// Traces agree up to the first point where both have stopped. In weak mode
// End and FuelExhausted are interchangeable; in strong mode both traces
// come from the same observation budget, so they stop at the same index.
EquivVerdict compare(const Trace& a, const Trace& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; i++) {
    if (terminal(a[i]) && terminal(b[i])) return {};
    if (!(a[i] == b[i])) return {false, Counterexample{a, b, i}};
  }
  return {false, Counterexample{a, b, n}};
}
}  // namespace

EquivVerdict strong_equiv(const OStream& a, const OStream& b, int fuel) {
  return compare(run_trace(a, fuel), run_trace(b, fuel));
}

EquivVerdict weak_equiv(const OStream& a, const OStream& b, int fuel) {
  return compare(noskip_trace(a, fuel), noskip_trace(b, fuel));
}

// ---- linearization ----

bool probably_ended(const UnrollFn& f, const Val& z0, int fuel) {
  Val z = z0;
  for (int i = 0; i < fuel; i++) {
    auto [a, z1] = f(z);
    if (a) return false;
    if (z1 == z) return true;  // a fixed point skips forever
    z = z1;
  }
  return true;
}

UnrollFn o_linearize_flat(UnrollFn u, Pred g, int fuel) {
  return [u, g, fuel](const Val& z0) -> std::pair<OptVal, Val> {
    Val z = z0;
    for (int i = 0; i < fuel; i++) {
      auto [a, z1] = u(z);
      if (a) return {a, z1};
      if (probably_ended(u, z1, fuel) || !g(z1)) return {std::nullopt, z1};
      z = z1;
    }
    return {std::nullopt, z};
  };
}

namespace {
struct InnerCfg {
  UnrollFn step;
  Pred grd;
};

Val cfg_val(const InnerSpec& in) {
  auto c = std::make_shared<const InnerCfg>(InnerCfg{in.step, in.grd});
  return Val::opaque(c, "inner");
}
}  // namespace

LinearNested o_linearize_nested(UnrollFn u1, const Val& z1, Pred g1, InnerSpec inner, Pred g3, int fuel) {
  Val cfg = cfg_val(inner);
  LinearNested r;
  r.z0 = Val::pair(Val::none(), z1);
  r.g0 = [g1, g3](const Val& s) { return g1(s.snd()) && g3(s.snd()); };
  r.u0 = [u1, g1, inner, cfg, fuel](const Val& s0) -> std::pair<OptVal, Val> {
    Val opt = s0.fst(), z = s0.snd();
    for (int i = 0; i < fuel; i++) {
      if (!opt.is_some()) {
        auto [x, z2] = u1(z);
        if (!x) {
          if (probably_ended(u1, z2, fuel)) return {std::nullopt, Val::pair(Val::none(), z2)};
          z = z2;
          continue;
        }
        if (!g1(z2)) return {std::nullopt, Val::pair(Val::none(), z2)};
        opt = Val::some(Val::pair(cfg, inner.zp0(z2, *x)));
        z = z2;
        continue;
      }
      const auto& c = *static_cast<const InnerCfg*>(opt.value().fst().ptr().get());
      Val zp = opt.value().snd();
      auto [y, zz] = c.step(Val::pair(zp, z));
      Val next = Val::some(Val::pair(opt.value().fst(), zz.fst()));
      if (y) return {y, Val::pair(next, zz.snd())};
      z = zz.snd();
      opt = c.grd(zz) ? next : Val::none();
    }
    return {std::nullopt, Val::pair(opt, z)};
  };
  return r;
}

OStream LinearNested::stream() const { return o_abstract(o_guard(g0, o_unroll(u0, z0))); }

OStream o_nested_reference(UnrollFn u1, const Val& z1, Pred g1, InnerSpec inner, Pred g3) {
  FlatMapFn f = [inner](const Val& z, const Val& x) {
    return o_abstract(o_guard(inner.grd, o_unroll(inner.step, Val::pair(inner.zp0(z, x), z))));
  };
  return o_guard(g3, o_flat_map(f, o_guard(g1, o_unroll(u1, z1))));
}

}  // namespace os
