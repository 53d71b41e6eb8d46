#include "stream_sugar/sugar.hpp"

namespace ss {

using namespace bir;
using sc::flat_map_raw;
using sc::guard;
using sc::infinite;
using sc::initializing;
using sc::initializing_ref;
using sc::map_raw;

namespace {
constexpr int64_t kByteMax = 255;

Stream counter(const Exp& n) {
  return initializing_ref(n, [](const MutVar& i) {
    return guard(dref(i) > int_(0), infinite([i](const Consumer& k) { return seq(decr(i), k(Item::unit())); }));
  });
}
}  // namespace

CStream iota(const Exp& n) {
  return initializing_ref(n, [](const MutVar& z) {
    return infinite([z](const Consumer& k) {
      return letl(dref(z), [&](const Exp& v) { return seq(incr(z), k(v)); });
    });
  });
}

CStream from_to(const Exp& a, const Exp& b) {
  return initializing_ref(a, [b](const MutVar& z) {
    return guard(dref(z) <= b, infinite([z](const Consumer& k) {
      return letl(dref(z), [&](const Exp& v) { return seq(incr(z), k(v)); });
    }));
  });
}

CStream of_arr(const ArrVar& a) {
  return initializing_ref(int_(0), [a](const MutVar& i) {
    return guard(dref(i) < array_len(a), infinite([a, i](const Consumer& k) {
      return seq(array_get(a, dref(i), [&](const Exp& el) { return k(el); }), incr(i));
    }));
  });
}

CStream of_int_array(std::vector<int64_t> vals) {
  return sc::initializing_static_array(Ty::Int, std::move(vals), [](const ArrVar& a) { return of_arr(a); });
}

Stream pull_array(const Exp& upb, std::function<Stm(const Exp&, const Consumer&)> body) {
  return initializing_ref(int_(0), [upb, body](const MutVar& z) {
    return guard(dref(z) <= upb, infinite([z, body](const Consumer& k) {
      return letl(dref(z), [&](const Exp& v) { return seq(incr(z), body(v, k)); });
    }));
  });
}

CStream map(const ExpFn& f, const CStream& s) {
  return map_raw([f](const Item& e, const Consumer& k) {
    return letl(f(e.exp()), [&](const Exp& v) { return k(v); });
  }, s);
}

CStream filter(const ExpFn& p, const CStream& s) {
  return sc::filter_raw([p](const Item& e) { return p(e.exp()); }, s);
}

Stream take(const Exp& n, const Stream& s) {
  return zip_with([](const Item&, const Item& x) { return x; }, counter(n), s);
}

CStream take_while(const ExpFn& p, const CStream& s) {
  return initializing_ref(bool_(true), [p, s](const MutVar& zr) {
    return guard(dref(zr), map_raw([p, zr](const Item& e, const Consumer& k) {
      return if_(p(e.exp()), k(e), assign(zr, bool_(false)));
    }, s));
  });
}

Stream drop(const Exp& n, const Stream& s) {
  return initializing_ref(n, [s](const MutVar& z) {
    return map_raw([z](const Item& e, const Consumer& k) {
      return if_(dref(z) > int_(0), decr(z), k(e));
    }, s, false);
  });
}

CStream drop_while(const ExpFn& p, const CStream& s) {
  return initializing_ref(bool_(true), [p, s](const MutVar& dropping) {
    return map_raw([p, dropping](const Item& e, const Consumer& k) {
      return if_(dref(dropping) && p(e.exp()), skip(), seq(assign(dropping, bool_(false)), k(e)));
    }, s, false);
  });
}

CStream scan(const ExpFn2& f, const Exp& z, const CStream& s) {
  return initializing_ref(z, [f, s](const MutVar& acc) {
    return map_raw([f, acc](const Item& e, const Consumer& k) {
      return letl(f(dref(acc), e.exp()), [&](const Exp& v) { return seq(assign(acc, v), k(v)); });
    }, s);
  });
}

CStream map_accum(const Exp& z,
                  std::function<Stm(const Exp&, const Exp&, const std::function<Stm(const Exp&, const Exp&)>&)> f,
                  const CStream& s) {
  return initializing_ref(z, [f, s](const MutVar& acc) {
    return map_raw([f, acc](const Item& e, const Consumer& k) {
      return letl(dref(acc), [&](const Exp& old) {
        return f(old, e.exp(), [&](const Exp& out, const Exp& nacc) { return seq(assign(acc, nacc), k(out)); });
      });
    }, s);
  });
}

Stream zip_with(std::function<Item(const Item&, const Item&)> f, const Stream& s1, const Stream& s2) {
  return sc::map_raw_pure([f](const Item& p) { return f(p.first(), p.second()); }, sc::zip_raw(s1, s2));
}

CStream zip_with_exp(const ExpFn2& f, const CStream& s1, const CStream& s2) {
  return zip_with([f](const Item& a, const Item& b) { return Item(f(a.exp(), b.exp())); }, s1, s2);
}

Stream flat_map(std::function<Stream(const Exp&)> f, const CStream& s) {
  return flat_map_raw([f](const Item& x) { return f(x.exp()); }, s);
}

Stm iter(std::function<Stm(const Item&)> f, const Stream& s) { return sc::iter(f, s); }

Stm fold(const ExpFn2& f, const Exp& z, const CStream& s, bool wide) {
  return newref(z, [&](const MutVar& acc) {
    return seq(sc::iter([&](const Item& x) { return assign(acc, f(dref(acc), x.exp())); }, s), ret(dref(acc)));
  }, wide);
}

Stm sum(const CStream& s) {
  return fold([](const Exp& a, const Exp& b) { return a + b; }, int_(0), s);
}

Stm sum_long(const CStream& s) {
  return fold([](const Exp& a, const Exp& b) { return a + b; }, int_(0), s, true);
}

CStream diff(const CStream& s) {
  return initializing_ref(int_(0), [s](const MutVar& z) {
    return map_raw([z](const Item& e, const Consumer& k) {
      return letl(e.exp() - dref(z), [&](const Exp& v) { return seq(assign(z, e.exp()), k(v)); });
    }, s);
  });
}

CStream rle_encode(const CStream& bools) {
  return initializing_ref(int_(0), [bools](const MutVar& zc) {
    return map_raw([zc](const Item& el, const Consumer& k) {
      return letl(dref(zc), [&](const Exp& zeros) {
        return if_(el.exp(), seq(assign(zc, int_(0)), k(zeros)),
                   seq(assign(zc, zeros + int_(1)),
                       if1(dref(zc) == int_(kByteMax), seq(assign(zc, int_(0)), k(int_(kByteMax))))));
      });
    }, bools, false);
  });
}

CStream rle_decode(const CStream& bytes) {
  return flat_map([](const Exp& el) {
    return initializing(el - int_of_bool(el == int_(kByteMax)), [el](const Exp& last) {
      return pull_array(last, [el](const Exp& i, const Consumer& k) { return k(i == el); });
    });
  }, bytes);
}

Stream map_accum_filter(const Exp& z, MealyTr tr, const Stream& s) {
  return initializing_ref(z, [tr, s](const MutVar& st) {
    return map_raw([tr, st](const Item& c, const Consumer& k) {
      return letl(dref(st), [&](const Exp& os) {
        return tr(os, c, [&](const std::optional<Item>& out, const Exp& ns) {
          return out ? seq(assign(st, ns), k(*out)) : assign(st, ns);
        });
      });
    }, s, false);
  });
}

Stream parse_ints(const CStream& chars) {
  return map_accum_filter(int_(0), [](const Exp& s, const Item& ci, const MealyK& k) {
    Exp c = ci.exp();
    return if_((c >= int_('0')) && (c <= int_('9')), k(std::nullopt, (int_(10) * s) + (c - int_('0'))),
               k(Item::pair(s, c), int_(0)));
  }, chars);
}

Stream group_by_aggregate(const Exp& sep, const Monoid& m, const Stream& pairs) {
  return map_accum_filter(m.unit, [sep, m](const Exp& s, const Item& xc, const MealyK& k) {
    Exp c = xc.second().exp();
    return letl(m.op(s, xc.first().exp()), [&](const Exp& ns) {
      return if_(c == sep, k(std::nullopt, ns), k(Item::pair(ns, c), m.unit));
    });
  }, pairs);
}

}  // namespace ss
