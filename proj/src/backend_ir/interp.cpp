#include "backend_ir/interp.hpp"

#include <bit>
#include <cstdio>
#include <functional>
#include <unordered_map>

namespace bir {

namespace {

struct ArrayStore {
  std::vector<int64_t> data;
  std::vector<char> init;
  bool bound = false;
  std::string name;
};

struct Machine {
  std::vector<int64_t> slots;
  std::vector<ArrayStore> arrs;
  InterpResult* res = nullptr;
  uint64_t budget = 0;
  bool returned = false;

  void tick() {
    if (++res->steps > budget) throw BudgetExceeded("step budget exceeded");
  }
};

using CE = std::function<int64_t(Machine&)>;
using CS = std::function<void(Machine&)>;

int64_t fbits(double d) { return std::bit_cast<int64_t>(d); }
double fval(int64_t b) { return std::bit_cast<double>(b); }
int64_t wrap_add(int64_t a, int64_t b) { return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b)); }
int64_t wrap_sub(int64_t a, int64_t b) { return static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b)); }
int64_t wrap_mul(int64_t a, int64_t b) { return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b)); }

std::string format_value(Ty ty, int64_t bits) {
  char buf[64];
  if (ty == Ty::F64)
    std::snprintf(buf, sizeof buf, "%.17g", fval(bits));
  else
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(bits));
  return buf;
}

class Compiler {
 public:
  int n_params = 0;

  int slot_of(const VarP& v) {
    auto it = vars_.find(v.get());
    if (it == vars_.end()) throw RuntimeFault("unbound variable " + v->name);
    return it->second;
  }
  int bind(const VarP& v) {
    int s = static_cast<int>(vars_.size());
    vars_[v.get()] = s;
    return s;
  }
  int arr_of(const ArrP& a) {
    if (a->param_index > 0) {
      n_params = std::max(n_params, a->param_index);
      return a->param_index - 1;
    }
    auto it = arrs_.find(a.get());
    if (it == arrs_.end()) throw RuntimeFault("unbound array " + a->name);
    return it->second;
  }
  int bind_arr(const ArrP& a) {
    int s = -static_cast<int>(arrs_.size()) - 1;  // local arrays live after params; fixed up later
    arrs_[a.get()] = s;
    return s;
  }
  size_t n_vars() const { return vars_.size(); }
  size_t n_local_arrs() const { return arrs_.size(); }

  CE exp(const Exp& e) {
    const auto& n = e.node();
    switch (n.kind) {
      case ExpNode::Lit: {
        int64_t v = n.ty == Ty::F64 ? fbits(n.fval) : n.ival;
        return [v](Machine&) { return v; };
      }
      case ExpNode::VarRead:
      case ExpNode::Deref: {
        int s = slot_of(n.var);
        return [s](Machine& m) { return m.slots[s]; };
      }
      case ExpNode::Unary: {
        CE a = exp(n.a);
        switch (static_cast<UnOp>(n.op)) {
          case UnOp::Not: return [a](Machine& m) { return int64_t(a(m) == 0); };
          case UnOp::Neg: return [a](Machine& m) { return wrap_sub(0, a(m)); };
          case UnOp::IntOfBool: return a;
          case UnOp::FOfInt: return [a](Machine& m) { return fbits(static_cast<double>(a(m))); };
        }
        break;
      }
      case ExpNode::Binary: return binary(static_cast<BinOp>(n.op), exp(n.a), exp(n.b));
      case ExpNode::Cond: {
        CE c = exp(n.a), t = exp(n.b), f = exp(n.c);
        return [c, t, f](Machine& m) { return c(m) ? t(m) : f(m); };
      }
      case ExpNode::ArrGet: {
        int s = arr_of(n.arr);
        CE i = exp(n.a);
        return [this, s, i](Machine& m) {
          auto& a = m.arrs[fix(s)];
          int64_t k = i(m);
          if (!a.bound) throw RuntimeFault("array " + a.name + " not bound");
          if (k < 0 || k >= static_cast<int64_t>(a.data.size()))
            throw RuntimeFault("index " + std::to_string(k) + " out of bounds for " + a.name);
          if (!a.init[k]) throw RuntimeFault("read of uninitialized element of " + a.name);
          return a.data[k];
        };
      }
      case ExpNode::ArrLen: {
        int s = arr_of(n.arr);
        return [this, s](Machine& m) { return static_cast<int64_t>(m.arrs[fix(s)].data.size()); };
      }
    }
    throw RuntimeFault("malformed expression");
  }

  CE binary(BinOp op, CE a, CE b) {
    switch (op) {
      case BinOp::Add: return [a, b](Machine& m) { return wrap_add(a(m), b(m)); };
      case BinOp::Sub: return [a, b](Machine& m) { return wrap_sub(a(m), b(m)); };
      case BinOp::Mul: return [a, b](Machine& m) { return wrap_mul(a(m), b(m)); };
      case BinOp::Div:
        return [a, b](Machine& m) {
          int64_t x = a(m), y = b(m);
          if (y == 0) throw RuntimeFault("division by zero");
          if (y == -1) return wrap_sub(0, x);
          return x / y;
        };
      case BinOp::Mod:
        return [a, b](Machine& m) {
          int64_t x = a(m), y = b(m);
          if (y == 0) throw RuntimeFault("modulo by zero");
          if (y == -1) return int64_t(0);
          return x % y;
        };
      case BinOp::LogAnd: return [a, b](Machine& m) { return a(m) & b(m); };
      case BinOp::IMax: return [a, b](Machine& m) { return std::max(a(m), b(m)); };
      case BinOp::IMin: return [a, b](Machine& m) { return std::min(a(m), b(m)); };
      case BinOp::Eq: return [a, b](Machine& m) { return int64_t(a(m) == b(m)); };
      case BinOp::Ne: return [a, b](Machine& m) { return int64_t(a(m) != b(m)); };
      case BinOp::Lt: return [a, b](Machine& m) { return int64_t(a(m) < b(m)); };
      case BinOp::Le: return [a, b](Machine& m) { return int64_t(a(m) <= b(m)); };
      case BinOp::Gt: return [a, b](Machine& m) { return int64_t(a(m) > b(m)); };
      case BinOp::Ge: return [a, b](Machine& m) { return int64_t(a(m) >= b(m)); };
      case BinOp::And: return [a, b](Machine& m) { return int64_t(a(m) && b(m)); };
      case BinOp::Or: return [a, b](Machine& m) { return int64_t(a(m) || b(m)); };
      case BinOp::FAdd: return [a, b](Machine& m) { return fbits(fval(a(m)) + fval(b(m))); };
      case BinOp::FSub: return [a, b](Machine& m) { return fbits(fval(a(m)) - fval(b(m))); };
      case BinOp::FMul: return [a, b](Machine& m) { return fbits(fval(a(m)) * fval(b(m))); };
      case BinOp::FDiv: return [a, b](Machine& m) { return fbits(fval(a(m)) / fval(b(m))); };
      case BinOp::FLt: return [a, b](Machine& m) { return int64_t(fval(a(m)) < fval(b(m))); };
    }
    throw RuntimeFault("bad operator");
  }

  CS stm(const Stm& s) {
    if (!s.valid()) return [](Machine&) {};
    const auto& n = s.node();
    switch (n.kind) {
      case StmNode::Skip: return [](Machine&) {};
      case StmNode::Seq: {
        std::vector<CS> xs;
        for (const auto& x : n.stms) xs.push_back(stm(x));
        return [xs](Machine& m) {
          for (const auto& x : xs) {
            x(m);
            if (m.returned) return;
          }
        };
      }
      case StmNode::Let:
      case StmNode::NewRef: {
        CE init = exp(n.e);
        int sl = bind(n.var);
        CS body = stm(n.body);
        return [init, sl, body](Machine& m) {
          m.tick();
          m.slots[sl] = init(m);
          body(m);
        };
      }
      case StmNode::Assign: {
        int sl = slot_of(n.var);
        CE e = exp(n.e);
        return [sl, e](Machine& m) {
          m.tick();
          m.slots[sl] = e(m);
        };
      }
      case StmNode::Incr:
      case StmNode::Decr: {
        int sl = slot_of(n.var);
        int64_t d = n.kind == StmNode::Incr ? 1 : -1;
        return [sl, d](Machine& m) {
          m.tick();
          m.slots[sl] = wrap_add(m.slots[sl], d);
        };
      }
      case StmNode::If: {
        CE c = exp(n.e);
        CS t = stm(n.body), f = stm(n.els);
        return [c, t, f](Machine& m) {
          m.tick();
          if (c(m)) t(m); else f(m);
        };
      }
      case StmNode::While: {
        CE c = exp(n.e);
        CS body = stm(n.body);
        return [c, body](Machine& m) {
          m.tick();
          while (c(m)) {
            m.tick();
            body(m);
            if (m.returned) return;
          }
        };
      }
      case StmNode::ArrSet: {
        int sa = arr_of(n.arr);
        CE i = exp(n.e), v = exp(n.e2);
        return [this, sa, i, v](Machine& m) {
          m.tick();
          auto& a = m.arrs[fix(sa)];
          int64_t k = i(m);
          if (k < 0 || k >= static_cast<int64_t>(a.data.size()))
            throw RuntimeFault("index " + std::to_string(k) + " out of bounds for " + a.name);
          a.data[k] = v(m);
          a.init[k] = 1;
        };
      }
      case StmNode::NewArray:
      case StmNode::NewStaticArray:
      case StmNode::NewUArray: {
        std::vector<CE> elems;
        for (const auto& e : n.elems) elems.push_back(exp(e));
        int sa = bind_arr(n.arr);
        std::vector<int64_t> ivals = n.ivals;
        auto kind = n.kind;
        int64_t len = n.arr->static_len.value_or(0);
        std::string name = n.arr->name;
        CS body = stm(n.body);
        return [this, elems, sa, ivals, kind, len, name, body](Machine& m) {
          m.tick();
          auto& a = m.arrs[fix(sa)];
          a.name = name;
          a.bound = true;
          if (kind == StmNode::NewArray) {
            a.data.clear();
            for (const auto& e : elems) a.data.push_back(e(m));
            a.init.assign(a.data.size(), 1);
          } else if (kind == StmNode::NewStaticArray) {
            a.data = ivals;
            a.init.assign(a.data.size(), 1);
          } else {
            a.data.assign(len, 0);
            a.init.assign(len, 0);
          }
          body(m);
        };
      }
      case StmNode::Print: {
        CE e = exp(n.e);
        Ty ty = n.e.ty();
        return [e, ty](Machine& m) {
          m.tick();
          m.res->trace.push_back(format_value(ty, e(m)));
        };
      }
      case StmNode::Return: {
        CE e = exp(n.e);
        Ty ty = n.e.ty();
        return [e, ty](Machine& m) {
          m.tick();
          int64_t v = e(m);
          Value r{ty, ty == Ty::F64 ? 0 : v, ty == Ty::F64 ? fval(v) : 0};
          m.res->ret = r;
          m.returned = true;
        };
      }
    }
    throw RuntimeFault("malformed statement");
  }

  // local array slots are negative until the param count is known
  int fix(int s) const { return s >= 0 ? s : n_params - s - 1; }

 private:
  std::unordered_map<const VarInfo*, int> vars_;
  std::unordered_map<const ArrInfo*, int> arrs_;
};

}  // namespace

InterpResult interpret(const Stm& body, const std::vector<std::vector<int64_t>>& arrays,
                       const InterpOptions& opt) {
  Compiler c;
  c.n_params = static_cast<int>(arrays.size());
  CS run = c.stm(body);
  if (c.n_params > static_cast<int>(arrays.size()))
    throw RuntimeFault("body reads parameter array a" + std::to_string(c.n_params) +
                       " but only " + std::to_string(arrays.size()) + " supplied");
  InterpResult res;
  Machine m;
  m.res = &res;
  m.budget = opt.step_budget;
  m.slots.assign(c.n_vars(), 0);
  m.arrs.resize(arrays.size() + c.n_local_arrs());
  for (size_t i = 0; i < arrays.size(); ++i) {
    auto& a = m.arrs[i];
    a.data = arrays[i];
    a.init.assign(a.data.size(), 1);
    a.bound = true;
    a.name = "a" + std::to_string(i + 1);
  }
  run(m);
  return res;
}

Value eval_closed(const Exp& e) {
  InterpResult r = interpret(ret(e));
  return *r.ret;
}

}  // namespace bir
