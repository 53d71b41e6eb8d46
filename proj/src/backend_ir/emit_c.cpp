#include "backend_ir/emit_c.hpp"

#include <cstdio>
#include <sstream>

namespace bir {

namespace {

bool exp_wide(const Exp& e) {
  if (!e.valid()) return false;
  const auto& n = e.node();
  if ((n.kind == ExpNode::Deref || n.kind == ExpNode::VarRead) && n.var) return n.var->wide;
  return exp_wide(n.a) || exp_wide(n.b) || exp_wide(n.c);
}

std::string c_type(Ty t, bool wide) {
  switch (t) {
    case Ty::Bool: return "bool";
    case Ty::Int: return wide ? "int64_t" : "int";
    case Ty::F64: return "double";
    case Ty::Unit: return "void";
  }
  return "void";
}

std::string int_lit(int64_t v) {
  if (v < 0) {
    if (v == INT64_MIN) return "(-9223372036854775807LL - 1)";
    return "(" + std::to_string(v) + (v < INT32_MIN ? "LL" : "") + ")";
  }
  return std::to_string(v) + (v > INT32_MAX ? "LL" : "");
}

std::string f64_lit(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return v < 0 ? "(" + s + ")" : s;
}

bool compound(const Exp& e) {
  auto k = e.node().kind;
  return k == ExpNode::Binary || k == ExpNode::Unary;
}

std::string rend(const Exp& e);

std::string child(const Exp& e) { return compound(e) ? "(" + rend(e) + ")" : rend(e); }

std::string rend(const Exp& e) {
  const auto& n = e.node();
  switch (n.kind) {
    case ExpNode::Lit:
      if (n.ty == Ty::Bool) return n.ival ? "true" : "false";
      if (n.ty == Ty::F64) return f64_lit(n.fval);
      return int_lit(n.ival);
    case ExpNode::VarRead:
    case ExpNode::Deref:
      return n.var->name;
    case ExpNode::Unary:
      switch (static_cast<UnOp>(n.op)) {
        case UnOp::Not: return "!" + child(n.a);
        case UnOp::Neg: return "-" + child(n.a);
        case UnOp::IntOfBool: return "(int)" + child(n.a);
        case UnOp::FOfInt: return "(double)" + child(n.a);
      }
      break;
    case ExpNode::Binary: {
      auto op = static_cast<BinOp>(n.op);
      if (op == BinOp::IMax || op == BinOp::IMin) {
        std::string a = child(n.a), b = child(n.b);
        return "(" + a + (op == BinOp::IMax ? " > " : " < ") + b + " ? " + a + " : " + b + ")";
      }
      return child(n.a) + " " + binop_symbol(op) + " " + child(n.b);
    }
    case ExpNode::Cond:
      return "(" + rend(n.a) + " ? " + rend(n.b) + " : " + rend(n.c) + ")";
    case ExpNode::ArrGet:
      return n.arr->name + "[" + rend(n.a) + "]";
    case ExpNode::ArrLen:
      if (n.arr->param_index > 0) return n.arr->len_name;
      return std::to_string(n.arr->static_len.value_or(0));
  }
  return "?";
}

const Exp* find_return(const Stm& s) {
  if (!s.valid()) return nullptr;
  const auto& n = s.node();
  if (n.kind == StmNode::Return) return &n.e;
  for (const auto& x : n.stms)
    if (auto r = find_return(x)) return r;
  if (auto r = find_return(n.body)) return r;
  return find_return(n.els);
}

class Printer {
 public:
  std::ostringstream out;

  void line(int ind, const std::string& s) { out << std::string(2 * ind, ' ') << s << '\n'; }

  void hoist(const Stm& s, int ind) {
    if (!s.valid()) return;
    const auto& n = s.node();
    if (n.kind == StmNode::NewStaticArray) {
      std::string vals;
      for (size_t i = 0; i < n.ivals.size(); ++i) {
        if (i) vals += ", ";
        vals += n.arr->elem == Ty::Bool ? (n.ivals[i] ? "true" : "false") : int_lit(n.ivals[i]);
      }
      if (n.ivals.empty()) vals = "0";  // C has no zero-length arrays
      size_t len = n.ivals.empty() ? 1 : n.ivals.size();
      line(ind, "static const " + c_type(n.arr->elem, false) + " " + n.arr->name + "[" +
                    std::to_string(len) + "] = {" + vals + "};");
    }
    for (const auto& x : n.stms) hoist(x, ind);
    hoist(n.body, ind);
    hoist(n.els, ind);
  }

  void block(const Stm& s, int ind) {
    line(ind, "{");
    stm(s, ind + 1);
    line(ind, "}");
  }

  void stm(const Stm& s, int ind) {
    if (!s.valid()) return;
    const auto& n = s.node();
    switch (n.kind) {
      case StmNode::Skip: return;
      case StmNode::Seq:
        for (const auto& x : n.stms) stm(x, ind);
        return;
      case StmNode::Let:
        line(ind, c_type(n.var->ty, exp_wide(n.e)) + " const " + n.var->name + " = " + rend(n.e) + ";");
        stm(n.body, ind);
        return;
      case StmNode::NewRef:
        line(ind, c_type(n.var->ty, n.var->wide) + " " + n.var->name + " = " + rend(n.e) + ";");
        stm(n.body, ind);
        return;
      case StmNode::Assign:
        line(ind, n.var->name + " = " + rend(n.e) + ";");
        return;
      case StmNode::Incr: line(ind, n.var->name + "++;"); return;
      case StmNode::Decr: line(ind, n.var->name + "--;"); return;
      case StmNode::If:
        line(ind, "if (" + rend(n.e) + ")");
        block(n.body, ind);
        if (n.els.valid()) {
          line(ind, "else");
          block(n.els, ind);
        }
        return;
      case StmNode::While:
        line(ind, "while (" + rend(n.e) + ")");
        block(n.body, ind);
        return;
      case StmNode::ArrSet:
        line(ind, n.arr->name + "[" + rend(n.e) + "] = " + rend(n.e2) + ";");
        return;
      case StmNode::NewArray: {
        std::string vals;
        for (size_t i = 0; i < n.elems.size(); ++i) vals += (i ? ", " : "") + rend(n.elems[i]);
        if (n.elems.empty()) vals = "0";
        size_t len = n.elems.empty() ? 1 : n.elems.size();
        line(ind, c_type(n.arr->elem, false) + " " + n.arr->name + "[" + std::to_string(len) +
                      "] = {" + vals + "};");
        stm(n.body, ind);
        return;
      }
      case StmNode::NewStaticArray:  // declared at function entry
        stm(n.body, ind);
        return;
      case StmNode::NewUArray: {
        size_t len = *n.arr->static_len ? *n.arr->static_len : 1;
        line(ind, c_type(n.arr->elem, false) + " " + n.arr->name + "[" + std::to_string(len) + "];");
        stm(n.body, ind);
        return;
      }
      case StmNode::Print:
        switch (n.e.ty()) {
          case Ty::F64: line(ind, "printf(\"%.17g\\n\", " + rend(n.e) + ");"); break;
          case Ty::Int:
            if (exp_wide(n.e)) {
              line(ind, "printf(\"%lld\\n\", (long long)" + child(n.e) + ");");
              break;
            }
            [[fallthrough]];
          default: line(ind, "printf(\"%d\\n\", " + rend(n.e) + ");");
        }
        return;
      case StmNode::Return:
        line(ind, "return " + rend(n.e) + ";");
        return;
    }
  }
};

}  // namespace

std::string render_exp(const Exp& e) { return rend(e); }

std::string c_return_type(const Stm& body) {
  const Exp* r = find_return(body);
  if (!r) return "void";
  return c_type(r->ty(), exp_wide(*r));
}

std::string emit_c(const Stm& body, const std::vector<ArrVar>& params, const EmitOptions& opt) {
  Printer p;
  p.out << "/* pipeline: " << opt.pipeline_name << ", seed: " << opt.seed << " */\n";
  p.out << "#include <stdint.h>\n#include <stdio.h>\n#include <stdbool.h>\n\n";
  std::string sig;
  for (const auto& a : params) {
    if (!sig.empty()) sig += ", ";
    sig += "const " + c_type(a.elem_ty(), false) + " * " + a.name() + ", int " + a.info()->len_name;
  }
  p.out << c_return_type(body) << " " << opt.fn_name << "(" << sig << "){\n";
  p.hoist(body, 1);
  p.stm(body, 1);
  p.out << "}\n";
  return p.out.str();
}

}  // namespace bir
