#include "backend_ir/audit.hpp"

#include <set>

namespace bir {

namespace {

class Auditor {
 public:
  AuditReport rep;

  void fail(const std::string& s) {
    rep.ok = false;
    rep.violations.push_back(s);
  }

  void exp(const Exp& e) {
    if (!e.valid()) {
      fail("missing expression");
      return;
    }
    const auto& n = e.node();
    if (n.kind < ExpNode::Lit || n.kind > ExpNode::ArrLen) {
      fail("unknown expression kind");
      return;
    }
    rep.node_counts[exp_kind_name(n.kind)]++;
    switch (n.kind) {
      case ExpNode::Lit: break;
      case ExpNode::VarRead:
      case ExpNode::Deref:
        if (!n.var) fail("variable node without binder");
        break;
      case ExpNode::Unary: exp(n.a); break;
      case ExpNode::Binary: exp(n.a); exp(n.b); break;
      case ExpNode::Cond: exp(n.a); exp(n.b); exp(n.c); break;
      case ExpNode::ArrGet:
        if (!n.arr) fail("array read without array");
        exp(n.a);
        break;
      case ExpNode::ArrLen:
        if (!n.arr) fail("array length without array");
        break;
    }
  }

  void stm(const Stm& s, int depth) {
    if (!s.valid()) return;
    const auto& n = s.node();
    if (n.kind < StmNode::Skip || n.kind > StmNode::Return) {
      fail("unknown statement kind");
      return;
    }
    rep.node_counts[stm_kind_name(n.kind)]++;
    switch (n.kind) {
      case StmNode::Skip: break;
      case StmNode::Seq:
        for (const auto& x : n.stms) stm(x, depth);
        break;
      case StmNode::Let:
      case StmNode::NewRef:
        exp(n.e);
        stm(n.body, depth);
        break;
      case StmNode::Assign: exp(n.e); break;
      case StmNode::Incr:
      case StmNode::Decr: break;
      case StmNode::If:
        exp(n.e);
        stm(n.body, depth);
        stm(n.els, depth);
        break;
      case StmNode::While:
        exp(n.e);
        rep.loop_depth_max = std::max(rep.loop_depth_max, depth + 1);
        stm(n.body, depth + 1);
        break;
      case StmNode::ArrSet:
        exp(n.e);
        exp(n.e2);
        break;
      case StmNode::NewStaticArray:
        // constant data; the emitter hoists it out of every loop
        for (const auto& e : n.elems) exp(e);
        stm(n.body, depth);
        break;
      case StmNode::NewArray:
      case StmNode::NewUArray:
        if (depth > 0) fail(std::string(stm_kind_name(n.kind)) + " " + n.arr->name + " inside a loop");
        for (const auto& e : n.elems) exp(e);
        stm(n.body, depth);
        break;
      case StmNode::Print:
      case StmNode::Return: exp(n.e); break;
    }
  }
};

class Scoper {
 public:
  HygieneReport rep;

  void fail(const std::string& s) {
    rep.ok = false;
    rep.violations.push_back(s);
  }

  void bind_name(const std::string& name) {
    if (!seen_.insert(name).second) fail("name bound twice: " + name);
  }

  void use_var(const VarP& v, bool as_mutable) {
    if (!v) return;
    if (!scope_vars_.count(v.get())) {
      fail("use of " + v->name + " outside its scope");
      return;
    }
    if (mutable_.count(v.get()) != static_cast<size_t>(as_mutable))
      fail(v->name + (as_mutable ? " is not a mutable cell" : " is a mutable cell read without dref"));
  }

  void use_arr(const ArrP& a) {
    if (!a || a->param_index > 0) return;
    if (!scope_arrs_.count(a.get())) fail("use of array " + a->name + " outside its scope");
  }

  void exp(const Exp& e) {
    if (!e.valid()) return;
    const auto& n = e.node();
    switch (n.kind) {
      case ExpNode::VarRead: use_var(n.var, false); break;
      case ExpNode::Deref: use_var(n.var, true); break;
      case ExpNode::ArrGet:
      case ExpNode::ArrLen: use_arr(n.arr); break;
      default: break;
    }
    exp(n.a);
    exp(n.b);
    exp(n.c);
  }

  void stm(const Stm& s) {
    if (!s.valid()) return;
    const auto& n = s.node();
    switch (n.kind) {
      case StmNode::Seq:
        for (const auto& x : n.stms) stm(x);
        return;
      case StmNode::Let:
      case StmNode::NewRef: {
        exp(n.e);
        bind_name(n.var->name);
        scope_vars_.insert(n.var.get());
        if (n.kind == StmNode::NewRef) mutable_.insert(n.var.get());
        stm(n.body);
        scope_vars_.erase(n.var.get());
        return;
      }
      case StmNode::Assign:
        use_var(n.var, true);
        exp(n.e);
        return;
      case StmNode::Incr:
      case StmNode::Decr: use_var(n.var, true); return;
      case StmNode::If:
      case StmNode::While:
        exp(n.e);
        stm(n.body);
        stm(n.els);
        return;
      case StmNode::ArrSet:
        use_arr(n.arr);
        exp(n.e);
        exp(n.e2);
        return;
      case StmNode::NewArray:
      case StmNode::NewStaticArray:
      case StmNode::NewUArray:
        for (const auto& e : n.elems) exp(e);
        bind_name(n.arr->name);
        scope_arrs_.insert(n.arr.get());
        stm(n.body);
        scope_arrs_.erase(n.arr.get());
        return;
      case StmNode::Print:
      case StmNode::Return: exp(n.e); return;
      case StmNode::Skip: return;
    }
  }

 private:
  std::set<std::string> seen_;
  std::set<const VarInfo*> scope_vars_, mutable_;
  std::set<const ArrInfo*> scope_arrs_;
};

}  // namespace

AuditReport grammar_audit(const Stm& body) {
  Auditor a;
  a.stm(body, 0);
  return a.rep;
}

HygieneReport hygiene_check(const Stm& body) {
  Scoper s;
  s.stm(body);
  return s.rep;
}

}  // namespace bir
