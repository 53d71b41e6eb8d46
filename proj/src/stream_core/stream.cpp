#include "stream_core/stream.hpp"

#include <stdexcept>

namespace sc {

using namespace bir;

// ---- items ----

Item Item::tuple(std::vector<Item> xs) {
  Item it;
  it.kind_ = Tuple;
  it.parts_ = std::make_shared<const std::vector<Item>>(std::move(xs));
  return it;
}

const Exp& Item::exp() const {
  if (kind_ != Leaf) throw std::logic_error("item is not a single code value: " + shape());
  return e_;
}

const std::vector<Item>& Item::parts() const {
  static const std::vector<Item> none;
  if (kind_ == Unit) return none;
  if (kind_ != Tuple) throw std::logic_error("item is not a tuple: " + shape());
  return *parts_;
}

std::vector<Exp> Item::leaves() const {
  std::vector<Exp> out;
  if (kind_ == Leaf) out.push_back(e_);
  if (kind_ == Tuple)
    for (const auto& p : *parts_) {
      auto sub = p.leaves();
      out.insert(out.end(), sub.begin(), sub.end());
    }
  return out;
}

std::string Item::shape() const {
  switch (kind_) {
    case Unit: return "unit";
    case Leaf: return ty_name(e_.ty());
    case Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < parts_->size(); ++i) s += (i ? "," : "") + (*parts_)[i].shape();
      return s + ")";
    }
  }
  return "?";
}

namespace {

thread_local OpObserver g_observer;
thread_local bool g_in_observer = false;

// Operations run while the observer itself inspects a stream are not reported.
Stream observed(const char* op, Stream s) {
  if (g_observer && !g_in_observer) {
    g_in_observer = true;
    try {
      g_observer(op, s);
    } catch (...) {
      g_in_observer = false;
      throw;
    }
    g_in_observer = false;
  }
  return s;
}

Stream mk(StreamNode n) { return Stream(std::make_shared<const StreamNode>(std::move(n))); }

Exp default_of(Ty ty) {
  switch (ty) {
    case Ty::Bool: return bool_(false);
    case Ty::F64: return f64(0);
    default: return int_(0);
  }
}

// ---- placeholders used when peeking under binders ----

Exp placeholder(Ty ty) {
  ExpNode n{};
  n.kind = ExpNode::VarRead;
  n.ty = ty;
  n.var = std::make_shared<const VarInfo>(VarInfo{"probe", ty, false});
  return Exp(std::make_shared<const ExpNode>(std::move(n)));
}

Item placeholder_like(const Item& it) {
  switch (it.kind()) {
    case Item::Unit: return Item::unit();
    case Item::Leaf: return Item(placeholder(it.exp().ty()));
    case Item::Tuple: {
      std::vector<Item> xs;
      for (const auto& p : it.parts()) xs.push_back(placeholder_like(p));
      return Item::tuple(std::move(xs));
    }
  }
  return Item::unit();
}

Stream open_init(const StreamNode& n) {
  SessionScope scratch;
  switch (n.ikind) {
    case StreamNode::Ref:
      return n.k_ref(MutVar(std::make_shared<const VarInfo>(VarInfo{"probe", n.init.ty(), n.wide})));
    case StreamNode::Let: return n.k_let(placeholder(n.init.ty()));
    case StreamNode::StaticArray:
      return n.k_arr(ArrVar(std::make_shared<const ArrInfo>(
          ArrInfo{"probe", n.elem, static_cast<int64_t>(n.vals.size()), 0, ""})));
  }
  throw std::logic_error("bad init kind");
}

Item probe_items(const FlatRec& r) {
  SessionScope scratch;
  Item got;
  r.unr([&](const Item& x) {
    got = x;
    return skip();
  });
  return placeholder_like(got);
}

// Rebuilds an Init node around a transformed continuation.
Stream under_init(const StreamNode& n, std::function<Stream(const Stream&)> f) {
  StreamNode m;
  m.kind = StreamNode::Init;
  m.ikind = n.ikind;
  m.init = n.init;
  m.wide = n.wide;
  m.elem = n.elem;
  m.vals = n.vals;
  if (n.k_ref) m.k_ref = [k = n.k_ref, f](const MutVar& v) { return f(k(v)); };
  if (n.k_let) m.k_let = [k = n.k_let, f](const Exp& e) { return f(k(e)); };
  if (n.k_arr) m.k_arr = [k = n.k_arr, f](const ArrVar& a) { return f(k(a)); };
  return mk(std::move(m));
}

Stream make_flat(FlatRec r) {
  StreamNode n;
  n.kind = StreamNode::Flat;
  n.flat = std::move(r);
  return mk(std::move(n));
}

Stream make_nested(FlatRec producer, InnerFn inner, Exp trailing) {
  StreamNode n;
  n.kind = StreamNode::Nested;
  n.flat = std::move(producer);
  n.inner = std::move(inner);
  n.trailing = std::move(trailing);
  return mk(std::move(n));
}

Stream init_ref(const Exp& e, std::function<Stream(const MutVar&)> k, bool wide) {
  StreamNode n;
  n.kind = StreamNode::Init;
  n.ikind = StreamNode::Ref;
  n.init = e;
  n.wide = wide;
  n.k_ref = std::move(k);
  return mk(std::move(n));
}

Stream init_static(Ty elem, std::vector<int64_t> vals, std::function<Stream(const ArrVar&)> k) {
  StreamNode n;
  n.kind = StreamNode::Init;
  n.ikind = StreamNode::StaticArray;
  n.elem = elem;
  n.vals = std::move(vals);
  n.k_arr = std::move(k);
  return mk(std::move(n));
}

// ---- unobserved worker versions of the raw operations ----

Stream guard_(const Exp& g, const Stream& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case StreamNode::Init: return under_init(n, [g](const Stream& t) { return guard_(g, t); });
    case StreamNode::Flat: return make_flat({n.flat.unr, g && n.flat.grd, n.flat.linear});
    case StreamNode::Nested: return make_nested(n.flat, n.inner, g && n.trailing);
  }
  throw std::logic_error("bad stream");
}

using MapFn = std::function<Stm(const Item&, const Consumer&)>;

Stream map_raw_(const MapFn& f, const Stream& s, bool linear) {
  const auto& n = s.node();
  switch (n.kind) {
    case StreamNode::Init:
      return under_init(n, [f, linear](const Stream& t) { return map_raw_(f, t, linear); });
    case StreamNode::Flat: {
      Emitter unr = n.flat.unr;
      Emitter mapped = [unr, f](const Consumer& k) {
        return unr([&](const Item& x) { return f(x, k); });
      };
      return make_flat({mapped, n.flat.grd, n.flat.linear && linear});
    }
    case StreamNode::Nested: {
      InnerFn inner = n.inner;
      return make_nested(
          n.flat, [inner, f, linear](const Item& x) { return map_raw_(f, inner(x), linear); },
          n.trailing);
    }
  }
  throw std::logic_error("bad stream");
}

Stream flat_map_raw_(const InnerFn& f, const Stream& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case StreamNode::Init: return under_init(n, [f](const Stream& t) { return flat_map_raw_(f, t); });
    case StreamNode::Flat: return make_nested(n.flat, f, bool_(true));
    case StreamNode::Nested: {
      InnerFn inner = n.inner;
      return make_nested(
          n.flat, [inner, f](const Item& x) { return flat_map_raw_(f, inner(x)); }, n.trailing);
    }
  }
  throw std::logic_error("bad stream");
}

Stream linearize_(const Stream& s);

// Deeper nesting is linearized so closure conversion sees a Flat core.
Stream flatten_inner(const Stream& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case StreamNode::Init: return under_init(n, flatten_inner);
    case StreamNode::Flat: return s;
    case StreamNode::Nested: return linearize_(s);
  }
  throw std::logic_error("bad stream");
}

Stm store_item(const std::vector<MutVar>& cells, const Item& x) {
  auto leaves = x.leaves();
  if (leaves.size() != cells.size()) throw std::logic_error("item shape changed between observations");
  Stm s = skip();
  for (size_t i = 0; i < cells.size(); ++i) s = seq(s, assign(cells[i], leaves[i]));
  return s;
}

Item rebuild(const Item& shape, const std::vector<MutVar>& cells, size_t& pos) {
  switch (shape.kind()) {
    case Item::Unit: return Item::unit();
    case Item::Leaf: return Item(dref(cells[pos++]));
    case Item::Tuple: {
      std::vector<Item> xs;
      for (const auto& p : shape.parts()) xs.push_back(rebuild(p, cells, pos));
      return Item::tuple(std::move(xs));
    }
  }
  return Item::unit();
}

Stream alloc_cells(const std::vector<Exp>& leaves, size_t i, std::vector<MutVar> acc,
                   const std::function<Stream(const std::vector<MutVar>&)>& k) {
  if (i == leaves.size()) return k(acc);
  return init_ref(default_of(leaves[i].ty()), [leaves, i, acc, k](const MutVar& v) {
    auto next = acc;
    next.push_back(v);
    return alloc_cells(leaves, i + 1, next, k);
  }, false);
}

Stream cc_loop(const std::vector<MutVar>& cells, Stm acc, const Stream& s,
               const std::function<Stream(const ClosureConverted&)>& k) {
  const auto& n = s.node();
  switch (n.kind) {
    case StreamNode::Init:
      switch (n.ikind) {
        case StreamNode::Ref: {
          Exp i = n.init;
          auto sk = n.k_ref;
          return init_ref(default_of(i.ty()), [cells, acc, i, sk, k](const MutVar& z) {
            return cc_loop(cells, seq(acc, assign(z, i)), sk(z), k);
          }, n.wide);
        }
        case StreamNode::Let: {
          Exp i = n.init;
          auto sk = n.k_let;
          return init_ref(default_of(i.ty()), [cells, acc, i, sk, k](const MutVar& c) {
            return cc_loop(cells, seq(acc, assign(c, i)), sk(dref(c)), k);
          }, false);
        }
        case StreamNode::StaticArray: {
          auto sk = n.k_arr;
          return init_static(n.elem, n.vals, [cells, acc, sk, k](const ArrVar& a) {
            return cc_loop(cells, acc, sk(a), k);
          });
        }
      }
      break;
    case StreamNode::Flat: return k(ClosureConverted{cells, n.flat, acc});
    case StreamNode::Nested:
      throw std::logic_error("closure_convert: inner stream is nested; linearize it first");
  }
  throw std::logic_error("bad stream");
}

Stream closure_convert_(const InnerFn& f, const Item& shape,
                        const std::function<Stream(const ClosureConverted&)>& k) {
  return alloc_cells(shape.leaves(), 0, {}, [f, shape, k](const std::vector<MutVar>& cells) {
    size_t pos = 0;
    Item x = rebuild(shape, cells, pos);
    return cc_loop(cells, skip(), f(x), k);
  });
}

Stream linearize_nested(const StreamNode& n) {
  FlatRec p = n.flat;
  InnerFn inner = n.inner;
  Exp trailing = n.trailing;
  Item shape = probe_items(p);
  InnerFn inner_flat = [inner](const Item& x) { return flatten_inner(inner(x)); };
  return init_ref(int_(1), [=](const MutVar& q) {
    return closure_convert_(inner_flat, shape, [=](const ClosureConverted& cc) {
      Emitter unr = [=](const Consumer& k) {
        Stm advance_outer = if_(p.grd, p.unr([&](const Item& x) {
          return seq({store_item(cc.item_cells, x), cc.reinit, assign(q, int_(7))});
        }), assign(q, int_(0)));
        Stm advance_inner = if_(cc.core.grd, cc.core.unr([&](const Item& y) {
          return seq(k(y), assign(q, int_(5)));
        }), assign(q, int_(3)));
        return seq(assign(q, dref(q) + int_(2)),
                   while_(logand(dref(q), int_(2)) != int_(0),
                          seq(if1(dref(q) == int_(3), advance_outer), if1(dref(q) == int_(7), advance_inner))));
      };
      return make_flat({unr, (dref(q) != int_(0)) && trailing, true});
    });
  }, false);
}

Stream linearize_(const Stream& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case StreamNode::Init: return under_init(n, linearize_);
    case StreamNode::Flat: {
      if (n.flat.linear) return s;
      Emitter unr = n.flat.unr;
      Exp grd = n.flat.grd;
      // run the body until it produces or the guard fails
      Emitter once = [unr, grd](const Consumer& k) {
        return newref(bool_(true), [&](const MutVar& v) {
          return while_(dref(v), seq(unr([&](const Item& x) { return seq(assign(v, bool_(false)), k(x)); }),
                                     assign(v, dref(v) && grd)));
        });
      };
      return make_flat({once, grd, true});
    }
    case StreamNode::Nested: return linearize_nested(n);
  }
  throw std::logic_error("bad stream");
}

Complexity complexity_(const Stream& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case StreamNode::Init: return complexity_(open_init(n));
    case StreamNode::Flat: return {0, n.flat.linear};
    case StreamNode::Nested: {
      Item x = probe_items(n.flat);
      Stream in;
      {
        SessionScope scratch;
        in = n.inner(x);
      }
      return {1 + complexity_(in).depth, false};
    }
  }
  throw std::logic_error("bad stream");
}

bool is_flat_linear(const StreamNode& n) { return n.kind == StreamNode::Flat && n.flat.linear; }

// s1 linear Flat: run its step inside each step of s2
Stream fuse_left(const FlatRec& r1, const Stream& s2) {
  Emitter unr1 = r1.unr;
  MapFn f = [unr1](const Item& b, const Consumer& k) {
    return unr1([&](const Item& a) { return k(Item::pair(a, b)); });
  };
  return guard_(r1.grd, map_raw_(f, s2, true));
}

Stream fuse_right(const Stream& s1, const FlatRec& r2) {
  Emitter unr2 = r2.unr;
  MapFn f = [unr2](const Item& a, const Consumer& k) {
    return unr2([&](const Item& b) { return k(Item::pair(a, b)); });
  };
  return guard_(r2.grd, map_raw_(f, s1, true));
}

Stream zip_raw_(const Stream& s1, const Stream& s2, bool left_turn) {
  const auto& n1 = s1.node();
  const auto& n2 = s2.node();
  bool i1 = n1.kind == StreamNode::Init, i2 = n2.kind == StreamNode::Init;
  // declarations are pulled out alternately, left first
  if (i1 && (left_turn || !i2))
    return under_init(n1, [s2](const Stream& t) { return zip_raw_(t, s2, false); });
  if (i2) return under_init(n2, [s1](const Stream& t) { return zip_raw_(s1, t, true); });
  bool l1 = is_flat_linear(n1), l2 = is_flat_linear(n2);
  if (l1 && l2) {
    if (n2.flat.grd.is_lit_bool(true) && !n1.flat.grd.is_lit_bool(true)) return fuse_right(s1, n2.flat);
    return fuse_left(n1.flat, s2);
  }
  if (l1) return fuse_left(n1.flat, s2);
  if (l2) return fuse_right(s1, n2.flat);
  if (complexity_(s2) < complexity_(s1)) return zip_raw_(s1, linearize_(s2), true);
  return zip_raw_(linearize_(s1), s2, true);
}

Stm iter_(const Consumer& consumer, const Stream& s, const Exp& extra) {
  const auto& n = s.node();
  switch (n.kind) {
    case StreamNode::Init:
      switch (n.ikind) {
        case StreamNode::Ref:
          return newref(n.init, [&](const MutVar& v) { return iter_(consumer, n.k_ref(v), extra); }, n.wide);
        case StreamNode::Let:
          return letl(n.init, [&](const Exp& x) { return iter_(consumer, n.k_let(x), extra); });
        case StreamNode::StaticArray:
          return new_static_array(n.elem, n.vals,
                                  [&](const ArrVar& a) { return iter_(consumer, n.k_arr(a), extra); });
      }
      break;
    case StreamNode::Flat: return while_(n.flat.grd && extra, n.flat.unr(consumer));
    case StreamNode::Nested: {
      Exp t = n.trailing && extra;
      return while_(t && n.flat.grd,
                    n.flat.unr([&](const Item& x) { return iter_(consumer, n.inner(x), t); }));
    }
  }
  throw std::logic_error("bad stream");
}

NfReport nf_(const Stream& s, int depth) {
  NfReport r;
  if (!s.valid()) return {false, "null stream"};
  const auto& n = s.node();
  if (depth > 32) return {false, "nesting too deep"};
  switch (n.kind) {
    case StreamNode::Init: {
      bool has_k = n.ikind == StreamNode::Ref   ? bool(n.k_ref)
                   : n.ikind == StreamNode::Let ? bool(n.k_let)
                                                : bool(n.k_arr);
      if (!has_k) return {false, "init without binder"};
      if (n.ikind != StreamNode::StaticArray && (!n.init.valid() || n.init.ty() == Ty::Unit))
        return {false, "init without initializer"};
      NfReport sub = nf_(open_init(n), depth);
      sub.init_count++;
      return sub;
    }
    case StreamNode::Flat:
      if (!n.flat.unr) return {false, "flat without unrolling"};
      if (!n.flat.grd.valid() || n.flat.grd.ty() != Ty::Bool) return {false, "flat guard is not bool"};
      return r;
    case StreamNode::Nested: {
      if (!n.flat.unr || !n.inner) return {false, "nested without producer or inner"};
      if (!n.flat.grd.valid() || n.flat.grd.ty() != Ty::Bool) return {false, "producer guard is not bool"};
      if (!n.trailing.valid() || n.trailing.ty() != Ty::Bool) return {false, "trailing guard is not bool"};
      Item x = probe_items(n.flat);
      Stream in;
      {
        SessionScope scratch;
        in = n.inner(x);
      }
      NfReport sub = nf_(in, depth + 1);
      if (!sub.ok) return {false, "inner: " + sub.why};
      r.depth = sub.depth + 1;
      return r;
    }
  }
  return {false, "unknown stream kind"};
}

std::string describe_(const Stream& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case StreamNode::Init: {
      const char* k = n.ikind == StreamNode::Ref ? "ref" : n.ikind == StreamNode::Let ? "let" : "array";
      return std::string("Init(") + k + ")>" + describe_(open_init(n));
    }
    case StreamNode::Flat: return n.flat.linear ? "Flat[lin]" : "Flat[nonlin]";
    case StreamNode::Nested: {
      Item x = probe_items(n.flat);
      SessionScope scratch;
      return std::string("Nested[") + (n.flat.linear ? "lin" : "nonlin") + "]{" + describe_(n.inner(x)) + "}";
    }
  }
  return "?";
}

}  // namespace

// ---- public API ----

Stream initializing(const Exp& e, std::function<Stream(const Exp&)> k) {
  StreamNode n;
  n.kind = StreamNode::Init;
  n.ikind = StreamNode::Let;
  n.init = e;
  n.k_let = std::move(k);
  return observed("initializing", mk(std::move(n)));
}

Stream initializing_ref(const Exp& e, std::function<Stream(const MutVar&)> k, bool wide) {
  return observed("initializing_ref", init_ref(e, std::move(k), wide));
}

Stream initializing_static_array(Ty elem, std::vector<int64_t> vals, std::function<Stream(const ArrVar&)> k) {
  return observed("initializing_static_array", init_static(elem, std::move(vals), std::move(k)));
}

Stream infinite(Emitter unr) { return observed("infinite", make_flat({std::move(unr), bool_(true), true})); }

Stream flat(FlatRec r) { return observed("flat", make_flat(std::move(r))); }

Stream guard(const Exp& g, const Stream& s) { return observed("guard", guard_(g, s)); }

Stream map_raw(std::function<Stm(const Item&, const Consumer&)> f, const Stream& s, bool linear) {
  return observed("map_raw", map_raw_(f, s, linear));
}

Stream map_raw_pure(std::function<Item(const Item&)> f, const Stream& s) {
  return observed("map_raw_pure", map_raw_([f](const Item& x, const Consumer& k) { return k(f(x)); }, s, true));
}

Stream filter_raw(std::function<Exp(const Item&)> p, const Stream& s) {
  return observed("filter_raw",
                  map_raw_([p](const Item& x, const Consumer& k) { return if1(p(x), k(x)); }, s, false));
}

Stream flat_map_raw(InnerFn f, const Stream& s) { return observed("flat_map_raw", flat_map_raw_(f, s)); }

Stream zip_raw(const Stream& s1, const Stream& s2) { return observed("zip_raw", zip_raw_(s1, s2, true)); }

bool operator<(const Complexity& a, const Complexity& b) {
  if (a.depth != b.depth) return a.depth < b.depth;
  return a.linear && !b.linear;
}

Complexity complexity(const Stream& s) { return complexity_(s); }

Stream closure_convert(const InnerFn& f, const Item& item_shape,
                       const std::function<Stream(const ClosureConverted&)>& k) {
  return observed("closure_convert", closure_convert_(f, item_shape, k));
}

Stream linearize(const Stream& s) { return observed("linearize", linearize_(s)); }

Stm iter(const Consumer& consumer, const Stream& s) { return iter_(consumer, s, bool_(true)); }

Item item_shape(const Stream& s) {
  const auto& n = s.node();
  switch (n.kind) {
    case StreamNode::Init: return item_shape(open_init(n));
    case StreamNode::Flat: return probe_items(n.flat);
    case StreamNode::Nested: {
      Item x = probe_items(n.flat);
      SessionScope scratch;
      return item_shape(n.inner(x));
    }
  }
  return Item::unit();
}

NfReport nf_check(const Stream& s) { return nf_(s, 0); }

std::string describe(const Stream& s) { return describe_(s); }

void set_op_observer(OpObserver obs) { g_observer = std::move(obs); }

}  // namespace sc
