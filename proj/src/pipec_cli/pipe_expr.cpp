#include "pipec_cli/pipe_expr.hpp"

#include <climits>
#include <stdexcept>

#include "backend_ir/interp.hpp"
#include "stream_sugar/sugar.hpp"

namespace pc {

using bir::Exp;
using bir::int_;
using os::OptVal;
using os::OStream;
using os::Val;

// ---- UExpr ----

namespace {
UExpr mk_u(UExprNode n) { return std::make_shared<const UExprNode>(std::move(n)); }

const char* op_sym(UExprNode::Op op) {
  switch (op) {
    case UExprNode::Add: return "+";
    case UExprNode::Sub: return "-";
    case UExprNode::Mul: return "*";
    case UExprNode::Div: return "/";
    case UExprNode::Mod: return "%";
    case UExprNode::Min: return "min";
    case UExprNode::Max: return "max";
    case UExprNode::Lt: return "<";
    case UExprNode::Le: return "<=";
    case UExprNode::Gt: return ">";
    case UExprNode::Ge: return ">=";
    case UExprNode::Eq: return "==";
    case UExprNode::Ne: return "!=";
    case UExprNode::And: return "&&";
    case UExprNode::Or: return "||";
    default: return "?";
  }
}

Exp as_int(const Exp& e) { return e.ty() == bir::Ty::Bool ? bir::int_of_bool(e) : e; }
Exp as_bool(const Exp& e) { return e.ty() == bir::Ty::Bool ? e : e != int_(0); }

int64_t wrap_add(int64_t a, int64_t b) { return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b)); }
int64_t wrap_sub(int64_t a, int64_t b) { return static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b)); }
int64_t wrap_mul(int64_t a, int64_t b) { return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b)); }
}  // namespace

UExpr lit(int64_t v) {
  UExprNode n;
  n.op = UExprNode::Lit;
  n.lit = v;
  return mk_u(n);
}

UExpr var(int i) {
  UExprNode n;
  n.op = UExprNode::Var;
  n.var = i;
  return mk_u(n);
}

UExpr len(int param) {
  UExprNode n;
  n.op = UExprNode::Len;
  n.var = param;
  return mk_u(n);
}

UExpr bin(UExprNode::Op op, UExpr a, UExpr b) {
  UExprNode n;
  n.op = op;
  n.a = std::move(a);
  n.b = std::move(b);
  return mk_u(n);
}

UExpr not_u(UExpr a) {
  UExprNode n;
  n.op = UExprNode::Not;
  n.a = std::move(a);
  return mk_u(n);
}

UExpr to_int(UExpr a) {
  UExprNode n;
  n.op = UExprNode::ToInt;
  n.a = std::move(a);
  return mk_u(n);
}

std::string show(const UExpr& e) {
  switch (e->op) {
    case UExprNode::Lit: return std::to_string(e->lit);
    case UExprNode::Var: return "$" + std::to_string(e->var);
    case UExprNode::Not: return "!" + show(e->a);
    case UExprNode::ToInt: return "int(" + show(e->a) + ")";
    case UExprNode::Len: return "len a" + std::to_string(e->var);
    case UExprNode::Min:
    case UExprNode::Max: return std::string(op_sym(e->op)) + "(" + show(e->a) + ", " + show(e->b) + ")";
    default: return "(" + show(e->a) + " " + op_sym(e->op) + " " + show(e->b) + ")";
  }
}

Exp stage(const UExpr& e, const std::vector<Exp>& env) {
  switch (e->op) {
    case UExprNode::Lit: return int_(e->lit);
    case UExprNode::Var:
      if (e->var < 0 || static_cast<size_t>(e->var) >= env.size()) throw std::out_of_range("unbound $" + std::to_string(e->var));
      return env[static_cast<size_t>(e->var)];
    case UExprNode::Not: return !as_bool(stage(e->a, env));
    case UExprNode::ToInt: return as_int(stage(e->a, env));
    case UExprNode::Len: return bir::array_len(bir::param_array(e->var));
    case UExprNode::And: return as_bool(stage(e->a, env)) && as_bool(stage(e->b, env));
    case UExprNode::Or: return as_bool(stage(e->a, env)) || as_bool(stage(e->b, env));
    default: break;
  }
  Exp a = as_int(stage(e->a, env)), b = as_int(stage(e->b, env));
  switch (e->op) {
    case UExprNode::Add: return a + b;
    case UExprNode::Sub: return a - b;
    case UExprNode::Mul: return a * b;
    case UExprNode::Div: return a / b;
    case UExprNode::Mod: return a % b;
    case UExprNode::Min: return bir::imin(a, b);
    case UExprNode::Max: return bir::imax(a, b);
    case UExprNode::Lt: return a < b;
    case UExprNode::Le: return a <= b;
    case UExprNode::Gt: return a > b;
    case UExprNode::Ge: return a >= b;
    case UExprNode::Eq: return a == b;
    case UExprNode::Ne: return a != b;
    default: throw std::logic_error("stage: bad op");
  }
}

int64_t host(const UExpr& e, const std::vector<int64_t>& env, const std::vector<std::vector<int64_t>>* arrays) {
  auto rec = [&](const UExpr& x) { return host(x, env, arrays); };
  switch (e->op) {
    case UExprNode::Lit: return e->lit;
    case UExprNode::Var:
      if (e->var < 0 || static_cast<size_t>(e->var) >= env.size()) throw std::out_of_range("unbound $" + std::to_string(e->var));
      return env[static_cast<size_t>(e->var)];
    case UExprNode::Not: return rec(e->a) == 0;
    case UExprNode::ToInt: return rec(e->a);
    case UExprNode::And: return rec(e->a) != 0 && rec(e->b) != 0;
    case UExprNode::Or: return rec(e->a) != 0 || rec(e->b) != 0;
    case UExprNode::Len:
      if (!arrays || e->var < 1 || static_cast<size_t>(e->var) > arrays->size())
        throw std::out_of_range("no array a" + std::to_string(e->var));
      return static_cast<int64_t>((*arrays)[static_cast<size_t>(e->var - 1)].size());
    default: break;
  }
  int64_t a = rec(e->a), b = rec(e->b);
  switch (e->op) {
    case UExprNode::Add: return wrap_add(a, b);
    case UExprNode::Sub: return wrap_sub(a, b);
    case UExprNode::Mul: return wrap_mul(a, b);
    case UExprNode::Div:
      if (b == 0) throw std::domain_error("division by zero");
      return b == -1 ? wrap_sub(0, a) : a / b;
    case UExprNode::Mod:
      if (b == 0) throw std::domain_error("modulo by zero");
      return b == -1 ? 0 : a % b;
    case UExprNode::Min: return std::min(a, b);
    case UExprNode::Max: return std::max(a, b);
    case UExprNode::Lt: return a < b;
    case UExprNode::Le: return a <= b;
    case UExprNode::Gt: return a > b;
    case UExprNode::Ge: return a >= b;
    case UExprNode::Eq: return a == b;
    case UExprNode::Ne: return a != b;
    default: throw std::logic_error("host: bad op");
  }
}

// ---- PipeExpr constructors ----

namespace {
PipeExpr mk(PipeNode n) { return std::make_shared<const PipeNode>(std::move(n)); }

PipeExpr unary(PipeNode::Kind k, PipeExpr s, UExpr e = nullptr) {
  PipeNode n;
  n.kind = k;
  n.src = std::move(s);
  n.e1 = std::move(e);
  return mk(n);
}
}  // namespace

PipeExpr of_arr(int param) {
  PipeNode n;
  n.kind = PipeNode::OfArr;
  n.param = param;
  return mk(n);
}

PipeExpr of_list(std::vector<int64_t> vals) {
  PipeNode n;
  n.kind = PipeNode::OfList;
  n.vals = std::move(vals);
  return mk(n);
}

PipeExpr iota(UExpr from) {
  PipeNode n;
  n.kind = PipeNode::Iota;
  n.e1 = std::move(from);
  return mk(n);
}

PipeExpr from_to(UExpr a, UExpr b) {
  PipeNode n;
  n.kind = PipeNode::FromTo;
  n.e1 = std::move(a);
  n.e2 = std::move(b);
  return mk(n);
}

PipeExpr map(PipeExpr s, UExpr f) { return unary(PipeNode::Map, std::move(s), std::move(f)); }
PipeExpr filter(PipeExpr s, UExpr p) { return unary(PipeNode::Filter, std::move(s), std::move(p)); }
PipeExpr take_while(PipeExpr s, UExpr p) { return unary(PipeNode::TakeWhile, std::move(s), std::move(p)); }
PipeExpr drop_while(PipeExpr s, UExpr p) { return unary(PipeNode::DropWhile, std::move(s), std::move(p)); }
PipeExpr take(PipeExpr s, UExpr n) { return unary(PipeNode::Take, std::move(s), std::move(n)); }
PipeExpr drop(PipeExpr s, UExpr n) { return unary(PipeNode::Drop, std::move(s), std::move(n)); }
PipeExpr scan_sum(PipeExpr s) { return unary(PipeNode::ScanSum, std::move(s)); }
PipeExpr diff(PipeExpr s) { return unary(PipeNode::Diff, std::move(s)); }
PipeExpr rle_encode(PipeExpr s) { return unary(PipeNode::RleEncode, std::move(s)); }
PipeExpr rle_decode(PipeExpr s) { return unary(PipeNode::RleDecode, std::move(s)); }
PipeExpr parse_ints(PipeExpr s) { return unary(PipeNode::ParseInts, std::move(s)); }
PipeExpr fst(PipeExpr s) { return unary(PipeNode::Fst, std::move(s)); }
PipeExpr linearize(PipeExpr s) { return unary(PipeNode::Linearize, std::move(s)); }

PipeExpr flat_map(PipeExpr s, PipeExpr inner) {
  PipeNode n;
  n.kind = PipeNode::FlatMap;
  n.src = std::move(s);
  n.sub = std::move(inner);
  return mk(n);
}

PipeExpr zip(PipeExpr l, PipeExpr r, UExpr f) {
  PipeNode n;
  n.kind = PipeNode::Zip;
  n.src = std::move(l);
  n.right = std::move(r);
  n.e1 = std::move(f);
  return mk(n);
}

PipeExpr group_by(PipeExpr s, int64_t sep, bool max) {
  PipeNode n;
  n.kind = PipeNode::GroupBy;
  n.src = std::move(s);
  n.param = static_cast<int>(sep);
  n.flag = max;
  return mk(n);
}

std::string show(const PipeExpr& p) {
  const auto& n = *p;
  auto s = [&] { return show(n.src); };
  switch (n.kind) {
    case PipeNode::OfArr: return "of_arr a" + std::to_string(n.param);
    case PipeNode::OfList: {
      std::string r = "of_list [";
      for (size_t i = 0; i < n.vals.size(); i++) r += (i ? "," : "") + std::to_string(n.vals[i]);
      return r + "]";
    }
    case PipeNode::Iota: return "iota " + show(n.e1);
    case PipeNode::FromTo: return "from_to " + show(n.e1) + " " + show(n.e2);
    case PipeNode::Map: return s() + " |> map " + show(n.e1);
    case PipeNode::Filter: return s() + " |> filter " + show(n.e1);
    case PipeNode::TakeWhile: return s() + " |> take_while " + show(n.e1);
    case PipeNode::DropWhile: return s() + " |> drop_while " + show(n.e1);
    case PipeNode::Take: return s() + " |> take " + show(n.e1);
    case PipeNode::Drop: return s() + " |> drop " + show(n.e1);
    case PipeNode::ScanSum: return s() + " |> scan (+)";
    case PipeNode::Diff: return s() + " |> diff";
    case PipeNode::FlatMap: return s() + " |> flat_map (" + show(n.sub) + ")";
    case PipeNode::Zip:
      return "zip" + (n.e1 ? " " + show(n.e1) : std::string()) + " (" + s() + ") (" + show(n.right) + ")";
    case PipeNode::RleEncode: return s() + " |> rle_encode";
    case PipeNode::RleDecode: return s() + " |> rle_decode";
    case PipeNode::ParseInts: return s() + " |> parse_ints";
    case PipeNode::GroupBy:
      return s() + " |> group_by " + std::to_string(n.param) + (n.flag ? " max" : " sum");
    case PipeNode::Fst: return s() + " |> fst";
    case PipeNode::Linearize: return s() + " |> linearize";
  }
  return "?";
}

std::string show(const Pipeline& p) {
  const char* t = p.term == Terminal::Sum ? "sum" : p.term == Terminal::SumLong ? "sum_long" : "collect";
  return show(p.body) + " |> " + t;
}

int arity(const PipeExpr& p) {
  if (!p) return 0;
  int r = p->kind == PipeNode::OfArr ? p->param : 0;
  return std::max({r, arity(p->src), arity(p->sub), arity(p->right)});
}

bool has_nested(const PipeExpr& p) {
  if (!p) return false;
  if (p->kind == PipeNode::FlatMap || p->kind == PipeNode::RleDecode) return true;
  return has_nested(p->src) || has_nested(p->sub) || has_nested(p->right);
}

// ---- staged interpretation ----

namespace {
std::vector<Exp> bind(const Exp& x, const std::vector<Exp>& env) {
  std::vector<Exp> r{x};
  r.insert(r.end(), env.begin(), env.end());
  return r;
}
}  // namespace

sc::Stream build_stream(const PipeExpr& p, const std::vector<Exp>& env) {
  const auto& n = *p;
  UExpr e1 = n.e1;
  auto src = [&] { return build_stream(n.src, env); };
  auto fn = [e1, env](const Exp& x) { return stage(e1, bind(x, env)); };
  auto pred = [e1, env](const Exp& x) { return as_bool(stage(e1, bind(x, env))); };
  switch (n.kind) {
    case PipeNode::OfArr: return ss::of_arr(bir::param_array(n.param));
    case PipeNode::OfList: return ss::of_int_array(n.vals);
    case PipeNode::Iota: return ss::iota(as_int(stage(n.e1, env)));
    case PipeNode::FromTo: return ss::from_to(as_int(stage(n.e1, env)), as_int(stage(n.e2, env)));
    case PipeNode::Map: return ss::map(fn, src());
    case PipeNode::Filter: return ss::filter(pred, src());
    case PipeNode::TakeWhile: return ss::take_while(pred, src());
    case PipeNode::DropWhile: return ss::drop_while(pred, src());
    case PipeNode::Take: return ss::take(as_int(stage(n.e1, env)), src());
    case PipeNode::Drop: return ss::drop(as_int(stage(n.e1, env)), src());
    case PipeNode::ScanSum:
      return ss::scan([](const Exp& a, const Exp& b) { return a + as_int(b); }, int_(0), src());
    case PipeNode::Diff: return ss::diff(src());
    case PipeNode::FlatMap: {
      PipeExpr sub = n.sub;
      return ss::flat_map([sub, env](const Exp& x) { return build_stream(sub, bind(x, env)); }, src());
    }
    case PipeNode::Zip: {
      sc::Stream l = src(), r = build_stream(n.right, env);
      if (!e1) return sc::zip_raw(l, r);
      return ss::zip_with_exp([e1, env](const Exp& a, const Exp& b) {
        std::vector<Exp> e{a, b};
        e.insert(e.end(), env.begin(), env.end());
        return stage(e1, e);
      }, l, r);
    }
    case PipeNode::RleEncode:
      return ss::rle_encode(sc::map_raw_pure([](const sc::Item& x) { return sc::Item(as_bool(x.exp())); }, src()));
    case PipeNode::RleDecode: return ss::rle_decode(src());
    case PipeNode::ParseInts: return ss::parse_ints(src());
    case PipeNode::GroupBy: {
      ss::Monoid m = n.flag ? ss::Monoid{int_(INT32_MIN), [](const Exp& a, const Exp& b) { return bir::imax(a, b); }}
                            : ss::Monoid{int_(0), [](const Exp& a, const Exp& b) { return a + b; }};
      return ss::group_by_aggregate(int_(n.param), m, src());
    }
    case PipeNode::Fst: return sc::map_raw_pure([](const sc::Item& x) { return x.first(); }, src());
    case PipeNode::Linearize: return sc::linearize(src());
  }
  throw std::logic_error("build_stream: bad node");
}

bir::Stm build_stm(const Pipeline& p) {
  sc::Stream s = build_stream(p.body);
  if (p.term != Terminal::Collect)
    s = sc::map_raw_pure([](const sc::Item& x) { return sc::Item(as_int(x.exp())); }, s);
  switch (p.term) {
    case Terminal::Sum: return ss::sum(s);
    case Terminal::SumLong: return ss::sum_long(s);
    case Terminal::Collect:
      return ss::iter([](const sc::Item& x) {
        bir::Stm r = bir::skip();
        for (const auto& e : x.leaves()) r = bir::seq(r, bir::print(e));
        return r;
      }, s);
  }
  throw std::logic_error("build_stm: bad terminal");
}

std::vector<bir::ArrVar> params_of(const Pipeline& p) {
  std::vector<bir::ArrVar> r;
  for (int i = 1; i <= arity(p.body); i++) r.push_back(bir::param_array(i));
  return r;
}

// ---- oracle interpretation ----

namespace {

using Vec = std::shared_ptr<const std::vector<int64_t>>;
using OwnFn = std::function<std::pair<OptVal, Val>(const Val& own, const Val& x)>;

Val vi(int64_t v) { return Val::i(v); }
Val vb(bool v) { return Val::b(v); }

// Elements of xs, then one skip clearing the flag the guard watches.
OStream o_vector(Vec xs) {
  os::UnrollFn u = [xs](const Val& z) -> std::pair<OptVal, Val> {
    int64_t i = z.fst().as_int();
    if (z.snd().as_bool() && i < static_cast<int64_t>(xs->size())) return {vi((*xs)[static_cast<size_t>(i)]), Val::pair(vi(i + 1), vb(true))};
    return {std::nullopt, Val::pair(vi(i), vb(false))};
  };
  return o_guard([](const Val& z) { return z.snd().as_bool(); }, o_unroll(u, Val::pair(vi(0), vb(true))));
}

OStream o_from_to(int64_t a, int64_t b) {
  os::UnrollFn u = [b](const Val& z) -> std::pair<OptVal, Val> {
    int64_t x = z.fst().as_int();
    if (z.snd().as_bool() && x <= b) return {vi(x), Val::pair(vi(x + 1), vb(true))};
    return {std::nullopt, Val::pair(vi(x), vb(false))};
  };
  return o_guard([](const Val& z) { return z.snd().as_bool(); }, o_unroll(u, Val::pair(vi(a), vb(true))));
}

// Adds a private state component in front and updates only that.
OStream stateful(const Val& init, OwnFn f, const OStream& s) {
  return os::o_map_filter([f](const Val& z, const Val& x) -> std::pair<OptVal, Val> {
    auto [out, own] = f(z.fst(), x);
    return {out, Val::pair(own, z.snd())};
  }, os::o_init(init, s));
}

OStream pure_map(std::function<OptVal(const Val&)> f, const OStream& s) {
  return os::o_map_filter([f](const Val& z, const Val& x) { return std::pair{f(x), z}; }, s);
}

// Inner streams keep their own state private and expose the outer one.
os::FlatMapFn expose_outer(std::function<OStream(const Val&)> make) {
  return [make](const Val& z, const Val& x) { return os::o_abstract(os::o_adjust(os::swap, os::swap, os::o_init(z, make(x)))); };
}

std::vector<int64_t> bind_i(int64_t x, const std::vector<int64_t>& env) {
  std::vector<int64_t> r{x};
  r.insert(r.end(), env.begin(), env.end());
  return r;
}

}  // namespace

OStream oracle_stream(const PipeExpr& p, const std::vector<std::vector<int64_t>>& arrays,
                      const std::vector<int64_t>& env) {
  const auto& n = *p;
  UExpr e1 = n.e1;
  auto src = [&] { return oracle_stream(n.src, arrays, env); };
  const auto* arrs = &arrays;
  auto fn = [e1, env, arrs](const Val& x) { return host(e1, bind_i(x.as_int(), env), arrs); };
  switch (n.kind) {
    case PipeNode::OfArr: {
      size_t i = static_cast<size_t>(n.param - 1);
      if (i >= arrays.size()) throw std::out_of_range("missing input array a" + std::to_string(n.param));
      return o_vector(std::make_shared<const std::vector<int64_t>>(arrays[i]));
    }
    case PipeNode::OfList: return o_vector(std::make_shared<const std::vector<int64_t>>(n.vals));
    case PipeNode::Iota:
      return os::o_unroll([](const Val& z) { return std::pair{OptVal(z), vi(z.as_int() + 1)}; }, vi(host(n.e1, env, &arrays)));
    case PipeNode::FromTo: return o_from_to(host(n.e1, env, &arrays), host(n.e2, env, &arrays));
    case PipeNode::Map: return pure_map([fn](const Val& x) { return OptVal(vi(fn(x))); }, src());
    case PipeNode::Filter: return pure_map([fn](const Val& x) { return fn(x) ? OptVal(x) : OptVal(); }, src());
    case PipeNode::TakeWhile: {
      OStream s = stateful(vb(true), [fn](const Val&, const Val& x) -> std::pair<OptVal, Val> {
        if (fn(x)) return {x, vb(true)};
        return {std::nullopt, vb(false)};
      }, src());
      return os::o_guard([](const Val& z) { return z.fst().as_bool(); }, s);
    }
    case PipeNode::DropWhile:
      return stateful(vb(true), [fn](const Val& on, const Val& x) -> std::pair<OptVal, Val> {
        if (on.as_bool() && fn(x)) return {std::nullopt, vb(true)};
        return {x, vb(false)};
      }, src());
    case PipeNode::Take: {
      // zipped with a counter that stops after n
      os::UnrollFn count = [](const Val& z) -> std::pair<OptVal, Val> {
        int64_t c = z.fst().as_int();
        if (z.snd().as_bool() && c > 0) return {Val::unit(), Val::pair(vi(c - 1), vb(true))};
        return {std::nullopt, Val::pair(vi(c), vb(false))};
      };
      OStream counter = os::o_guard([](const Val& z) { return z.snd().as_bool(); },
                                    os::o_unroll(count, Val::pair(vi(host(n.e1, env, &arrays)), vb(true))));
      return pure_map([](const Val& pr) { return OptVal(pr.snd()); }, os::o_zip(counter, src()));
    }
    case PipeNode::Drop:
      return stateful(vi(host(n.e1, env, &arrays)), [](const Val& c, const Val& x) -> std::pair<OptVal, Val> {
        if (c.as_int() > 0) return {std::nullopt, vi(c.as_int() - 1)};
        return {x, c};
      }, src());
    case PipeNode::ScanSum:
      return stateful(vi(0), [](const Val& acc, const Val& x) -> std::pair<OptVal, Val> {
        Val v = vi(wrap_add(acc.as_int(), x.as_int()));
        return {v, v};
      }, src());
    case PipeNode::Diff:
      return stateful(vi(0), [](const Val& prev, const Val& x) -> std::pair<OptVal, Val> {
        return {vi(wrap_sub(x.as_int(), prev.as_int())), x};
      }, src());
    case PipeNode::FlatMap: {
      PipeExpr sub = n.sub;
      return os::o_flat_map(expose_outer([sub, arrs, env](const Val& x) {
        return oracle_stream(sub, *arrs, bind_i(x.as_int(), env));
      }), src());
    }
    case PipeNode::Zip: {
      OStream z = os::o_zip(src(), oracle_stream(n.right, arrays, env));
      if (!e1) return z;
      return pure_map([e1, env, arrs](const Val& pr) {
        std::vector<int64_t> e{pr.fst().as_int(), pr.snd().as_int()};
        e.insert(e.end(), env.begin(), env.end());
        return OptVal(vi(host(e1, e, arrs)));
      }, z);
    }
    case PipeNode::RleEncode:
      return stateful(vi(0), [](const Val& zc, const Val& x) -> std::pair<OptVal, Val> {
        if (x.as_int() != 0) return {zc, vi(0)};
        int64_t nz = zc.as_int() + 1;
        if (nz == 255) return {vi(255), vi(0)};
        return {std::nullopt, vi(nz)};
      }, src());
    case PipeNode::RleDecode:
      return os::o_flat_map(expose_outer([](const Val& x) {
        int64_t el = x.as_int();
        int64_t last = el - (el == 255 ? 1 : 0);
        return pure_map([el](const Val& i) { return OptVal(vi(i.as_int() == el)); }, o_from_to(0, last));
      }), src());
    case PipeNode::ParseInts:
      return stateful(vi(0), [](const Val& s, const Val& c) -> std::pair<OptVal, Val> {
        int64_t ch = c.as_int();
        if (ch >= '0' && ch <= '9') return {std::nullopt, vi(wrap_add(wrap_mul(10, s.as_int()), ch - '0'))};
        return {Val::pair(s, c), vi(0)};
      }, src());
    case PipeNode::GroupBy: {
      bool mx = n.flag;
      int64_t sep = n.param;
      Val unit = vi(mx ? INT32_MIN : 0);
      return stateful(unit, [mx, sep, unit](const Val& s, const Val& xc) -> std::pair<OptVal, Val> {
        int64_t a = s.as_int(), x = xc.fst().as_int();
        Val ns = vi(mx ? std::max(a, x) : wrap_add(a, x));
        if (xc.snd().as_int() == sep) return {std::nullopt, ns};
        return {Val::pair(ns, xc.snd()), unit};
      }, src());
    }
    case PipeNode::Fst: return pure_map([](const Val& pr) { return OptVal(pr.fst()); }, src());
    case PipeNode::Linearize: return src();
  }
  throw std::logic_error("oracle_stream: bad node");
}

// ---- running ----

namespace {
void leaves(const Val& v, std::vector<int64_t>& out) {
  if (v.kind() == Val::Pair) {
    leaves(v.fst(), out);
    leaves(v.snd(), out);
  } else if (v.kind() == Val::Bool) {
    out.push_back(v.as_bool());
  } else {
    out.push_back(v.as_int());
  }
}
}  // namespace

int64_t Outcome::checksum() const {
  if (value) return *value;
  uint64_t h = 1469598103934665603ULL;
  for (auto x : items) h = (h ^ static_cast<uint64_t>(x)) * 1099511628211ULL;
  return static_cast<int64_t>(h >> 1);
}

std::string Outcome::str(size_t max_items) const {
  if (value) return "value=" + std::to_string(*value);
  std::string r = "items[" + std::to_string(items.size()) + "]=";
  for (size_t i = 0; i < items.size() && i < max_items; i++) r += (i ? " " : "") + std::to_string(items[i]);
  if (items.size() > max_items) r += " ...";
  return r;
}

Outcome oracle_run(const Pipeline& p, const std::vector<std::vector<int64_t>>& arrays, int64_t max_items) {
  OStream s = oracle_stream(p.body, arrays);
  std::vector<int64_t> xs;
  int64_t produced = 0;
  while (produced < max_items) {
    auto st = s.observe();
    if (!st) break;
    if (st->item) {
      leaves(*st->item, xs);
      produced++;
    }
    s = st->resume(st->state);
  }
  if (produced >= max_items) throw std::runtime_error("oracle: item limit reached");
  Outcome o;
  if (p.term == Terminal::Collect) {
    o.items = std::move(xs);
  } else {
    int64_t acc = 0;
    for (auto x : xs) acc = wrap_add(acc, x);
    o.value = acc;
  }
  return o;
}

Outcome interp_run(const Pipeline& p, const std::vector<std::vector<int64_t>>& arrays, uint64_t step_budget) {
  bir::SessionScope scope;
  bir::Stm body = build_stm(p);
  bir::InterpOptions opt;
  opt.step_budget = step_budget;
  auto r = bir::interpret(body, arrays, opt);
  Outcome o;
  if (p.term == Terminal::Collect) {
    for (const auto& t : r.trace) o.items.push_back(std::stoll(t));
  } else {
    if (!r.ret) throw std::runtime_error("interp: fold returned nothing");
    o.value = r.ret->i;
  }
  return o;
}

}  // namespace pc
