#include "oracle_semantics/laws.hpp"

#include <functional>

namespace os {

namespace {

uint64_t mix(uint64_t h) {
  h ^= h >> 31;
  h *= 0x7fb5d329728ea185ULL;
  h ^= h >> 27;
  h *= 0x81dadef4bc2dd44dULL;
  h ^= h >> 33;
  return h;
}

// Random tables: a deterministic function of (instance seed, role, state).
struct Table {
  uint64_t seed;
  uint64_t operator()(uint64_t role, const Val& v) const { return mix(seed * 0x9e3779b97f4a7c15ULL ^ mix(role) ^ v.hash()); }
};

// States of generated sources are (w, x): w false means stopped for good,
// x in [-4, 4] drives the tables.
Val wx(bool w, int64_t x) { return Val::pair(Val::b(w), Val::i(x)); }
bool w_of(const Val& z) { return z.fst().as_bool(); }
int64_t x_of(const Val& z) { return z.snd().as_int(); }
int64_t small(uint64_t h) { return static_cast<int64_t>(h % 9) - 4; }

struct Gen {
  Table h;
  explicit Gen(uint64_t s) : h{s} {}

  Val z0(uint64_t role = 0) const { return wx(true, small(h(100 + role, Val()))); }

  // Stops (never producing again) or moves on; only nonlinear sources skip
  // while still running.
  UnrollFn source(uint64_t role, bool linear) const {
    Table t = h;
    return [t, role, linear](const Val& z) -> std::pair<OptVal, Val> {
      if (!w_of(z)) return {std::nullopt, z};
      uint64_t r = t(role, z);
      Val nz = wx(true, small(r >> 8));
      if (r % 8 == 0) return {std::nullopt, wx(false, x_of(z))};
      if (!linear && r % 8 <= 2) return {std::nullopt, nz};
      return {Val::i(static_cast<int64_t>((r >> 16) % 10)), nz};
    };
  }

  // True while running; arbitrary once stopped.
  Pred guard(uint64_t role) const {
    Table t = h;
    return [t, role](const Val& z) { return w_of(z) || t(role, z) % 2 == 0; };
  }

  // Preserves w unless broken, in which case producing stops the source.
  MapFilterFn map(uint64_t role, bool broken = false) const {
    Table t = h;
    return [t, role, broken](const Val& z, const Val& a) -> std::pair<OptVal, Val> {
      uint64_t r = t(role, Val::pair(z, a));
      Val nz = wx(w_of(z), small(r >> 8));
      if (r % 5 == 0) return {std::nullopt, nz};
      if (broken) nz = wx(false, x_of(nz));
      return {Val::i(a.as_int() * 3 + static_cast<int64_t>((r >> 20) % 7)), nz};
    };
  }

  // Inner stream over the outer state: unroll on ((count, a), z), guarded by
  // count > 0, with the private part abstracted away.
  FlatMapFn inner(uint64_t role, bool linear, bool broken = false) const {
    Table t = h;
    return [t, role, linear, broken](const Val& z, const Val& a) {
      int64_t count = static_cast<int64_t>(t(role, Val::pair(z, a)) % 4);
      UnrollFn step = [t, role, linear, broken](const Val& s) -> std::pair<OptVal, Val> {
        int64_t c = s.fst().fst().as_int();
        const Val& a = s.fst().snd();
        const Val& z = s.snd();
        if (c <= 0) return {std::nullopt, s};
        uint64_t r = t(role + 1, s);
        Val nz = wx(broken ? false : w_of(z), small(r >> 8));
        if (!linear && r % 3 == 0) return {std::nullopt, Val::pair(s.fst(), nz)};
        Val y = Val::i(a.as_int() * 7 + c * 3 + x_of(z));
        return {y, Val::pair(Val::pair(Val::i(c - 1), a), nz)};
      };
      Pred g = [](const Val& s) { return s.fst().fst().as_int() > 0; };
      return o_abstract(o_guard(g, o_unroll(step, Val::pair(Val::pair(Val::i(count), a), z))));
    };
  }

  bool coin(uint64_t role) const { return h(role, Val()) % 2 == 0; }
};

OStream drop_first(const OStream& s) {
  return OStream([s]() -> std::optional<Step> {
    auto st = s.observe();
    if (!st) return std::nullopt;
    return st->resume(st->state).observe();
  });
}

Val pswap(const Val& p) { return swap(p); }

UnrollFn id_times(const UnrollFn& u) {
  return [u](const Val& p) -> std::pair<OptVal, Val> {
    auto [a, z1] = u(p.snd());
    return {a, Val::pair(p.fst(), z1)};
  };
}

MapFilterFn id_times(const MapFilterFn& f) {
  return [f](const Val& p, const Val& a) -> std::pair<OptVal, Val> {
    auto [b, z1] = f(p.snd(), a);
    return {b, Val::pair(p.fst(), z1)};
  };
}

// Source over (z, z1) whose hidden first component also evolves.
OStream pair_source(const Gen& g, bool linear) {
  UnrollFn u = g.source(1, linear);
  UnrollFn up = [u](const Val& p) -> std::pair<OptVal, Val> {
    auto [a, z1] = u(p.snd());
    const Val& z = p.fst();
    return {a, Val::pair(wx(w_of(z), (x_of(z) * 3 + 5) % 9 - 4), z1)};
  };
  return o_unroll(up, Val::pair(g.z0(7), g.z0(1)));
}

OStream src(const Gen& g, uint64_t role = 1) { return o_unroll(g.source(role, g.coin(50 + role)), g.z0(role)); }

using LawFn = std::function<std::pair<OStream, OStream>(const Gen&, bool broken)>;

struct Law {
  const char* name;
  bool weak;
  LawFn make;
};

FlatMapFn lift_init(const FlatMapFn& f, bool wrong) {
  // λ((z, z1), a). f(z1, a) ⊳ init z
  return [f, wrong](const Val& p, const Val& a) { return o_init(p.fst(), f(wrong ? p.fst() : p.snd(), a)); };
}

const std::vector<Law>& laws() {
  static const std::vector<Law> ls = {
      {"unroll-init", false,
       [](const Gen& g, bool bad) {
         UnrollFn u = g.source(1, g.coin(51));
         Val z = g.z0(3), z1 = g.z0(1);
         Val start = bad ? Val::pair(z, u(z1).second) : Val::pair(z, z1);
         return std::pair{o_init(z, o_unroll(u, z1)), o_unroll(id_times(u), start)};
       }},
      {"guard-init", false,
       [](const Gen& g, bool bad) {
         Pred p = g.guard(2);
         Val z = g.z0(3);
         Pred lifted = [p, bad](const Val& s) { return p(bad ? s.fst() : s.snd()); };
         return std::pair{o_init(z, o_guard(p, src(g))), o_guard(lifted, o_init(z, src(g)))};
       }},
      {"map-init", false,
       [](const Gen& g, bool bad) {
         MapFilterFn f = g.map(4);
         Val z = g.z0(3);
         MapFilterFn lifted = id_times(f);
         if (bad)
           lifted = [f](const Val& p, const Val& a) -> std::pair<OptVal, Val> {
             auto [b, z0] = f(p.fst(), a);
             return {b, Val::pair(z0, p.snd())};
           };
         return std::pair{o_init(z, o_map_filter(f, src(g))), o_map_filter(lifted, o_init(z, src(g)))};
       }},
      {"flatmap-init", false,
       [](const Gen& g, bool bad) {
         FlatMapFn f = g.inner(5, g.coin(52));
         Val z = g.z0(3);
         return std::pair{o_init(z, o_flat_map(f, src(g))), o_flat_map(lift_init(f, bad), o_init(z, src(g)))};
       }},
      {"zip-init", false,
       [](const Gen& g, bool bad) {
         Val z = g.z0(3);
         OStream s1 = src(g, 1), s2 = src(g, 6);
         OStream rhs = bad ? o_init(z, o_zip(s2, s1)) : o_init(z, o_zip(s1, s2));
         return std::pair{o_zip(o_init(z, s1), s2), rhs};
       }},
      {"zip-abstract", false,
       [](const Gen& g, bool bad) {
         OStream s1 = pair_source(g, g.coin(53)), s2 = src(g, 6);
         OStream rhs = o_abstract(o_adjust(assoc_r, assoc_l, o_zip(s1, s2)));
         if (bad) rhs = o_map_filter([](const Val& z, const Val& a) { return std::pair{OptVal(pswap(a)), z}; }, rhs);
         return std::pair{o_zip(o_abstract(s1), s2), rhs};
       }},
      {"init-abstract", false,
       [](const Gen& g, bool bad) {
         Val z = g.z0(3);
         return std::pair{o_abstract(o_init(z, src(g))), bad ? drop_first(src(g)) : src(g)};
       }},
      {"abstract-init", false,
       [](const Gen& g, bool bad) {
         // init z (abstract s) ≅ abstract (adjust iso (init z s)), where iso
         // moves the hidden component to the front.
         Val z = g.z0(3);
         OStream s = pair_source(g, g.coin(54));
         StateFn to = [](const Val& p) { return Val::pair(p.snd().fst(), Val::pair(p.fst(), p.snd().snd())); };
         StateFn from = to;  // self-inverse
         OStream rhs = o_abstract(o_adjust(to, from, o_init(z, s)));
         return std::pair{o_init(z, o_abstract(s)), bad ? drop_first(rhs) : rhs};
       }},
      {"abstract-guard", false,
       [](const Gen& g, bool bad) {
         Pred p = g.guard(2);
         OStream s = pair_source(g, g.coin(55));
         Pred lifted = [p](const Val& q) { return p(q.snd()); };
         OStream rhs = bad ? o_abstract(s) : o_abstract(o_guard(lifted, s));
         return std::pair{o_guard(p, o_abstract(s)), rhs};
       }},
      {"abstract-map", false,
       [](const Gen& g, bool bad) {
         MapFilterFn f = g.map(4);
         OStream s = pair_source(g, g.coin(56));
         OStream rhs = bad ? o_abstract(s) : o_abstract(o_map_filter(id_times(f), s));
         return std::pair{o_map_filter(f, o_abstract(s)), rhs};
       }},
      {"abstract-flatmap", false,
       [](const Gen& g, bool bad) {
         FlatMapFn f = g.inner(5, g.coin(57));
         OStream s = pair_source(g, g.coin(58));
         return std::pair{o_flat_map(f, o_abstract(s)), o_abstract(o_flat_map(lift_init(f, bad), s))};
       }},
      {"unroll-map", false,
       [](const Gen& g, bool bad) {
         UnrollFn u = g.source(1, g.coin(59));
         MapFilterFn f = g.map(4);
         UnrollFn fused = [u, f](const Val& z) -> std::pair<OptVal, Val> {
           auto [a, z1] = u(z);
           if (!a) return {std::nullopt, z1};
           return f(z1, *a);
         };
         Val z = g.z0(1);
         return std::pair{o_map_filter(f, o_unroll(u, z)), bad ? o_unroll(u, z) : o_unroll(fused, z)};
       }},
      {"guard-guard", false,
       [](const Gen& g, bool bad) {
         Pred p1 = g.guard(2), p2 = g.guard(8);
         Pred both = [p1, p2, bad](const Val& z) { return bad ? (p1(z) || p2(z)) : (p1(z) && p2(z)); };
         return std::pair{o_guard(p2, o_guard(p1, src(g))), o_guard(both, src(g))};
       }},
      {"guard-map", false,
       [](const Gen& g, bool bad) {
         Pred p = g.guard(2);
         MapFilterFn f = g.map(4, bad);
         return std::pair{o_map_filter(f, o_guard(p, src(g))), o_guard(p, o_map_filter(f, src(g)))};
       }},
      {"guard-flatmap", false,
       [](const Gen& g, bool bad) {
         Pred p = g.guard(2);
         FlatMapFn f = g.inner(5, g.coin(60), bad);
         return std::pair{o_flat_map(f, o_guard(p, src(g))), o_guard(p, o_flat_map(f, src(g)))};
       }},
      {"flatmap-map", false,
       [](const Gen& g, bool bad) {
         FlatMapFn f1 = g.inner(5, g.coin(61));
         MapFilterFn f2 = g.map(4);
         FlatMapFn fused = [f1, f2, bad](const Val& z, const Val& a) {
           return bad ? f1(z, a) : o_map_filter(f2, f1(z, a));
         };
         return std::pair{o_map_filter(f2, o_flat_map(f1, src(g))), o_flat_map(fused, src(g))};
       }},
      {"flatmap-flatmap", false,
       [](const Gen& g, bool bad) {
         FlatMapFn f1 = g.inner(5, g.coin(62)), f2 = g.inner(9, g.coin(63));
         FlatMapFn fused = [f1, f2, bad](const Val& z, const Val& a) {
           return bad ? f1(z, a) : o_flat_map(f2, f1(z, a));
         };
         return std::pair{o_flat_map(f2, o_flat_map(f1, src(g))), o_flat_map(fused, src(g))};
       }},
      {"zip-guard", false,
       [](const Gen& g, bool bad) {
         Pred p = g.guard(2);
         OStream s1 = src(g, 1), s2 = src(g, 6);
         Pred lifted = [p](const Val& z) { return p(z.fst()); };
         OStream rhs = bad ? o_zip(s1, s2) : o_guard(lifted, o_zip(s1, s2));
         return std::pair{o_zip(o_guard(p, s1), s2), rhs};
       }},
      {"zip-bothlinear", true,
       [](const Gen& g, bool bad) {
         UnrollFn u1 = g.source(1, true), u2 = g.source(6, true);
         UnrollFn both = [u1, u2, bad](const Val& z) -> std::pair<OptVal, Val> {
           auto [a, z1] = u1(z.fst());
           auto [b, z2] = u2(z.snd());
           OptVal item;
           if (a && b) item = bad ? Val::pair(*b, *a) : Val::pair(*a, *b);
           return {item, Val::pair(z1, z2)};
         };
         Val z1 = g.z0(1), z2 = g.z0(6);
         return std::pair{o_zip(o_unroll(u1, z1), o_unroll(u2, z2)), o_unroll(both, Val::pair(z1, z2))};
       }},
      {"zip-linear", true,
       [](const Gen& g, bool bad) {
         UnrollFn u1 = g.source(1, true);
         Val z1 = g.z0(1);
         MapFilterFn f = [u1, bad](const Val& z, const Val& y) -> std::pair<OptVal, Val> {
           auto [x, z1n] = u1(z.fst());
           OptVal item;
           if (x) item = bad ? Val::pair(y, *x) : Val::pair(*x, y);
           return {item, Val::pair(z1n, z.snd())};
         };
         return std::pair{o_zip(o_unroll(u1, z1), src(g, 6)), o_map_filter(f, o_init(z1, src(g, 6)))};
       }},
  };
  return ls;
}

}  // namespace

int law_count() { return static_cast<int>(laws().size()); }

std::string law_name(int number) { return laws().at(number - 1).name; }

std::vector<LawResult> run_law_suite(const LawSuiteOptions& opt) {
  std::vector<LawResult> out;
  for (int n = 1; n <= law_count(); n++) {
    if (opt.only && opt.only != n) continue;
    const Law& law = laws()[n - 1];
    LawResult r;
    r.number = n;
    r.name = law.name;
    r.weak = law.weak;
    auto check = [&](const OStream& a, const OStream& b) {
      return law.weak ? weak_equiv(a, b, opt.fuel) : strong_equiv(a, b, opt.fuel);
    };
    for (int i = 0; i < opt.instances; i++) {
      Gen g(mix(opt.seed * 1000003ULL + static_cast<uint64_t>(n) * 7919ULL + static_cast<uint64_t>(i)));
      auto [lhs, rhs] = law.make(g, opt.inject_broken == n);
      EquivVerdict v = check(lhs, rhs);
      r.instances++;
      if (!v.holds) {
        r.counterexamples++;
        if (!r.first_counterexample) r.first_counterexample = v.counterexample;
      }
      auto [blhs, brhs] = law.make(g, true);
      r.negative_instances++;
      if (!check(blhs, brhs).holds) r.negative_detected++;
    }
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json law_report_json(const std::vector<LawResult>& rs, const LawSuiteOptions& opt) {
  nlohmann::json j;
  j["seed"] = opt.seed;
  j["instances_per_law"] = opt.instances;
  j["fuel"] = opt.fuel;
  j["laws"] = nlohmann::json::array();
  bool all = true;
  for (const auto& r : rs) {
    nlohmann::json l = {{"number", r.number},
                        {"name", r.name},
                        {"equivalence", r.weak ? "weak" : "strong"},
                        {"instances", r.instances},
                        {"counterexamples", r.counterexamples},
                        {"negative_instances", r.negative_instances},
                        {"negative_detected", r.negative_detected},
                        {"passed", r.passed()}};
    if (r.first_counterexample) {
      const auto& c = *r.first_counterexample;
      l["counterexample"] = {{"lhs", trace_str(c.lhs)}, {"rhs", trace_str(c.rhs)}, {"index", c.index}};
    }
    all = all && r.passed();
    j["laws"].push_back(l);
  }
  j["passed"] = all;
  return j;
}

}  // namespace os
