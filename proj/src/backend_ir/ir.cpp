#include "backend_ir/ir.hpp"

namespace bir {

const char* ty_name(Ty t) {
  switch (t) {
    case Ty::Bool: return "bool";
    case Ty::Int: return "int64";
    case Ty::F64: return "float64";
    case Ty::Unit: return "unit";
  }
  return "?";
}

const char* binop_symbol(BinOp op) {
  switch (op) {
    case BinOp::Add: case BinOp::FAdd: return "+";
    case BinOp::Sub: case BinOp::FSub: return "-";
    case BinOp::Mul: case BinOp::FMul: return "*";
    case BinOp::Div: case BinOp::FDiv: return "/";
    case BinOp::Mod: return "%";
    case BinOp::LogAnd: return "&";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: case BinOp::FLt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
    case BinOp::IMax: return "max";
    case BinOp::IMin: return "min";
  }
  return "?";
}

const char* stm_kind_name(StmNode::Kind k) {
  static const char* names[] = {"skip", "seq", "let", "newref", "assign", "incr", "decr", "if",
                                "while", "array_set", "new_array", "new_static_array",
                                "new_uarray", "print", "return"};
  return names[k];
}

const char* exp_kind_name(ExpNode::Kind k) {
  static const char* names[] = {"literal", "var", "dref", "unary", "binary", "cond",
                                "array_get", "array_len"};
  return names[k];
}

Ty Exp::ty() const { return n_->ty; }

bool Exp::is_lit_bool(bool v) const {
  return n_ && n_->kind == ExpNode::Lit && n_->ty == Ty::Bool && (n_->ival != 0) == v;
}

// ---- sessions ----

namespace {
thread_local Session* g_current = nullptr;
thread_local Session g_fallback;

[[noreturn]] void type_fail(const std::string& what) { throw TypeError(what); }

void expect(const Exp& e, Ty t, const char* ctx) {
  if (!e.valid()) type_fail(std::string(ctx) + ": missing expression");
  if (e.ty() != t)
    type_fail(std::string(ctx) + ": expected " + ty_name(t) + ", got " + ty_name(e.ty()));
}

ExpNode enode(ExpNode::Kind k, Ty ty) {
  ExpNode n{};
  n.kind = k;
  n.ty = ty;
  return n;
}

StmNode snode(StmNode::Kind k) {
  StmNode n{};
  n.kind = k;
  return n;
}

Exp mk(ExpNode n) { return Exp(std::make_shared<const ExpNode>(std::move(n))); }
Stm mk(StmNode n) { return Stm(std::make_shared<const StmNode>(std::move(n))); }

VarP new_var(const char* prefix, Ty ty, bool wide) {
  return std::make_shared<const VarInfo>(VarInfo{Session::current().fresh(prefix), ty, wide});
}
}  // namespace

std::string Session::fresh(const char* prefix) {
  return std::string(prefix) + "_" + std::to_string(++counter_);
}

Session& Session::current() { return g_current ? *g_current : g_fallback; }

SessionScope::SessionScope(uint64_t seed) : s_(seed), prev_(g_current) { g_current = &s_; }
SessionScope::~SessionScope() { g_current = prev_; }

// ---- expressions ----

Exp int_(int64_t v) {
  ExpNode n = enode(ExpNode::Lit, Ty::Int);
  n.ival = v;
  return mk(n);
}

Exp bool_(bool v) {
  ExpNode n = enode(ExpNode::Lit, Ty::Bool);
  n.ival = v ? 1 : 0;
  return mk(n);
}

Exp f64(double v) {
  ExpNode n = enode(ExpNode::Lit, Ty::F64);
  n.fval = v;
  return mk(n);
}

Exp binop(BinOp op, const Exp& a, const Exp& b) {
  const char* s = binop_symbol(op);
  Ty res;
  switch (op) {
    case BinOp::Add: case BinOp::Sub: case BinOp::Mul: case BinOp::Div: case BinOp::Mod:
    case BinOp::LogAnd: case BinOp::IMax: case BinOp::IMin:
      expect(a, Ty::Int, s); expect(b, Ty::Int, s); res = Ty::Int; break;
    case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge:
      expect(a, Ty::Int, s); expect(b, Ty::Int, s); res = Ty::Bool; break;
    case BinOp::Eq: case BinOp::Ne:
      if (!a.valid() || !b.valid() || a.ty() != b.ty() || a.ty() == Ty::Unit)
        type_fail(std::string(s) + ": operand types differ");
      res = Ty::Bool; break;
    case BinOp::And: case BinOp::Or:
      expect(a, Ty::Bool, s); expect(b, Ty::Bool, s);
      // identity elements fold away so guards read like hand-written code
      if (op == BinOp::And) {
        if (a.is_lit_bool(true)) return b;
        if (b.is_lit_bool(true)) return a;
      } else {
        if (a.is_lit_bool(false)) return b;
        if (b.is_lit_bool(false)) return a;
      }
      res = Ty::Bool; break;
    case BinOp::FAdd: case BinOp::FSub: case BinOp::FMul: case BinOp::FDiv:
      expect(a, Ty::F64, s); expect(b, Ty::F64, s); res = Ty::F64; break;
    case BinOp::FLt:
      expect(a, Ty::F64, s); expect(b, Ty::F64, s); res = Ty::Bool; break;
    default: type_fail("bad operator");
  }
  ExpNode n = enode(ExpNode::Binary, res);
  n.op = static_cast<int>(op);
  n.a = a;
  n.b = b;
  return mk(n);
}

Exp unop(UnOp op, const Exp& a) {
  Ty res;
  switch (op) {
    case UnOp::Not: expect(a, Ty::Bool, "not"); res = Ty::Bool; break;
    case UnOp::Neg: expect(a, Ty::Int, "neg"); res = Ty::Int; break;
    case UnOp::IntOfBool: expect(a, Ty::Bool, "int_of_bool"); res = Ty::Int; break;
    case UnOp::FOfInt: expect(a, Ty::Int, "of_int"); res = Ty::F64; break;
    default: type_fail("bad unary operator");
  }
  ExpNode n = enode(ExpNode::Unary, res);
  n.op = static_cast<int>(op);
  n.a = a;
  return mk(n);
}

Exp logand(const Exp& a, const Exp& b) { return binop(BinOp::LogAnd, a, b); }
Exp imax(const Exp& a, const Exp& b) { return binop(BinOp::IMax, a, b); }
Exp imin(const Exp& a, const Exp& b) { return binop(BinOp::IMin, a, b); }
Exp not_(const Exp& a) { return unop(UnOp::Not, a); }
Exp int_of_bool(const Exp& a) { return unop(UnOp::IntOfBool, a); }

Exp cond(const Exp& c, const Exp& t, const Exp& e) {
  expect(c, Ty::Bool, "cond");
  if (!t.valid() || !e.valid() || t.ty() != e.ty()) type_fail("cond: branch types differ");
  ExpNode n = enode(ExpNode::Cond, t.ty());
  n.a = c;
  n.b = t;
  n.c = e;
  return mk(n);
}

Exp operator+(const Exp& a, const Exp& b) { return binop(BinOp::Add, a, b); }
Exp operator-(const Exp& a, const Exp& b) { return binop(BinOp::Sub, a, b); }
Exp operator*(const Exp& a, const Exp& b) { return binop(BinOp::Mul, a, b); }
Exp operator/(const Exp& a, const Exp& b) { return binop(BinOp::Div, a, b); }
Exp operator%(const Exp& a, const Exp& b) { return binop(BinOp::Mod, a, b); }
Exp operator==(const Exp& a, const Exp& b) { return binop(BinOp::Eq, a, b); }
Exp operator!=(const Exp& a, const Exp& b) { return binop(BinOp::Ne, a, b); }
Exp operator<(const Exp& a, const Exp& b) { return binop(BinOp::Lt, a, b); }
Exp operator<=(const Exp& a, const Exp& b) { return binop(BinOp::Le, a, b); }
Exp operator>(const Exp& a, const Exp& b) { return binop(BinOp::Gt, a, b); }
Exp operator>=(const Exp& a, const Exp& b) { return binop(BinOp::Ge, a, b); }
Exp operator&&(const Exp& a, const Exp& b) { return binop(BinOp::And, a, b); }
Exp operator||(const Exp& a, const Exp& b) { return binop(BinOp::Or, a, b); }
Exp operator!(const Exp& a) { return not_(a); }
Exp operator-(const Exp& a) { return unop(UnOp::Neg, a); }

namespace F64 {
Exp of_int(const Exp& a) { return unop(UnOp::FOfInt, a); }
Exp add(const Exp& a, const Exp& b) { return binop(BinOp::FAdd, a, b); }
Exp sub(const Exp& a, const Exp& b) { return binop(BinOp::FSub, a, b); }
Exp mul(const Exp& a, const Exp& b) { return binop(BinOp::FMul, a, b); }
Exp div(const Exp& a, const Exp& b) { return binop(BinOp::FDiv, a, b); }
Exp lt(const Exp& a, const Exp& b) { return binop(BinOp::FLt, a, b); }
}  // namespace F64

// ---- statements ----

Stm skip() { return mk(snode(StmNode::Skip)); }

namespace {
void append_flat(std::vector<Stm>& out, const Stm& s) {
  if (!s.valid()) return;
  const auto& n = s.node();
  if (n.kind == StmNode::Skip) return;
  if (n.kind == StmNode::Seq) {
    for (const auto& x : n.stms) append_flat(out, x);
    return;
  }
  out.push_back(s);
}

Stm make_seq(std::vector<Stm> xs) {
  if (xs.empty()) return skip();
  if (xs.size() == 1) return xs[0];
  StmNode n = snode(StmNode::Seq);
  n.stms = std::move(xs);
  return mk(n);
}
}  // namespace

Stm seq(const Stm& a, const Stm& b) {
  std::vector<Stm> xs;
  append_flat(xs, a);
  append_flat(xs, b);
  return make_seq(std::move(xs));
}

Stm seq(std::initializer_list<Stm> list) {
  std::vector<Stm> xs;
  for (const auto& s : list) append_flat(xs, s);
  return make_seq(std::move(xs));
}

Stm if_(const Exp& c, const Stm& t, const Stm& e) {
  expect(c, Ty::Bool, "if_");
  StmNode n = snode(StmNode::If);
  n.e = c;
  n.body = t;
  n.els = e;
  return mk(n);
}

Stm if1(const Exp& c, const Stm& t) {
  expect(c, Ty::Bool, "if1");
  StmNode n = snode(StmNode::If);
  n.e = c;
  n.body = t;
  return mk(n);
}

Stm while_(const Exp& c, const Stm& body) {
  expect(c, Ty::Bool, "while_");
  StmNode n = snode(StmNode::While);
  n.e = c;
  n.body = body;
  return mk(n);
}

Stm letl(const Exp& e, const std::function<Stm(const Exp&)>& k) {
  if (!e.valid() || e.ty() == Ty::Unit) type_fail("letl: unit or missing expression");
  StmNode n = snode(StmNode::Let);
  n.var = new_var("t", e.ty(), false);
  n.e = e;
  ExpNode r = enode(ExpNode::VarRead, e.ty());
  r.var = n.var;
  n.body = k(mk(r));
  return mk(n);
}

Stm newref(const Exp& init, const std::function<Stm(const MutVar&)>& k, bool wide) {
  if (!init.valid() || init.ty() == Ty::Unit) type_fail("newref: unit or missing initializer");
  StmNode n = snode(StmNode::NewRef);
  n.var = new_var("v", init.ty(), wide && init.ty() == Ty::Int);
  n.e = init;
  n.body = k(MutVar(n.var));
  return mk(n);
}

Exp dref(const MutVar& v) {
  ExpNode n = enode(ExpNode::Deref, v.ty());
  n.var = v.info();
  return mk(n);
}

Stm assign(const MutVar& v, const Exp& e) {
  expect(e, v.ty(), "assign");
  StmNode n = snode(StmNode::Assign);
  n.var = v.info();
  n.e = e;
  return mk(n);
}

Stm incr(const MutVar& v) {
  if (v.ty() != Ty::Int) type_fail("incr: not an int cell");
  StmNode n = snode(StmNode::Incr);
  n.var = v.info();
  return mk(n);
}

Stm decr(const MutVar& v) {
  if (v.ty() != Ty::Int) type_fail("decr: not an int cell");
  StmNode n = snode(StmNode::Decr);
  n.var = v.info();
  return mk(n);
}

Stm print(const Exp& e) {
  if (!e.valid() || e.ty() == Ty::Unit) type_fail("print: unit or missing expression");
  StmNode n = snode(StmNode::Print);
  n.e = e;
  return mk(n);
}

Stm ret(const Exp& e) {
  if (!e.valid()) type_fail("ret: missing expression");
  StmNode n = snode(StmNode::Return);
  n.e = e;
  return mk(n);
}

Exp array_get_(const ArrVar& a, const Exp& idx) {
  expect(idx, Ty::Int, "array_get");
  ExpNode n = enode(ExpNode::ArrGet, a.elem_ty());
  n.arr = a.info();
  n.a = idx;
  return mk(n);
}

Stm array_get(const ArrVar& a, const Exp& idx, const std::function<Stm(const Exp&)>& k) {
  return letl(array_get_(a, idx), k);
}

Exp array_len(const ArrVar& a) {
  ExpNode n = enode(ExpNode::ArrLen, Ty::Int);
  n.arr = a.info();
  return mk(n);
}

Stm array_set(const ArrVar& a, const Exp& idx, const Exp& v) {
  expect(idx, Ty::Int, "array_set index");
  expect(v, a.elem_ty(), "array_set value");
  StmNode n = snode(StmNode::ArrSet);
  n.arr = a.info();
  n.e = idx;
  n.e2 = v;
  return mk(n);
}

namespace {
ArrP new_arr(Ty elem, std::optional<int64_t> len) {
  ArrInfo info{Session::current().fresh("t"), elem, len, 0, ""};
  return std::make_shared<const ArrInfo>(std::move(info));
}
}  // namespace

Stm new_array(Ty elem, const std::vector<Exp>& elems, const std::function<Stm(const ArrVar&)>& k) {
  for (const auto& e : elems) expect(e, elem, "new_array");
  StmNode n = snode(StmNode::NewArray);
  n.arr = new_arr(elem, static_cast<int64_t>(elems.size()));
  n.elems = elems;
  n.body = k(ArrVar(n.arr));
  return mk(n);
}

Stm new_static_array(Ty elem, const std::vector<int64_t>& vals,
                     const std::function<Stm(const ArrVar&)>& k) {
  if (elem != Ty::Int && elem != Ty::Bool) type_fail("new_static_array: int or bool elements only");
  StmNode n = snode(StmNode::NewStaticArray);
  n.arr = new_arr(elem, static_cast<int64_t>(vals.size()));
  n.ivals = vals;
  n.body = k(ArrVar(n.arr));
  return mk(n);
}

Stm new_uarray(Ty elem, int64_t len, const std::function<Stm(const ArrVar&)>& k) {
  if (len < 0) type_fail("new_uarray: negative length");
  StmNode n = snode(StmNode::NewUArray);
  n.arr = new_arr(elem, len);
  n.body = k(ArrVar(n.arr));
  return mk(n);
}

ArrVar param_array(int index, Ty elem) {
  ArrInfo info{"a" + std::to_string(index), elem, std::nullopt, index, "n" + std::to_string(index)};
  return ArrVar(std::make_shared<const ArrInfo>(std::move(info)));
}

}  // namespace bir
