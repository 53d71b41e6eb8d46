#include "pipec_cli/corpus.hpp"

#include <regex>
#include <set>

#include "backend_ir/audit.hpp"
#include "backend_ir/emit_c.hpp"

namespace pc {

namespace {

using O = UExprNode;

class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(int pct) { return pick(0, 99) < pct; }

  // Int-valued expression over bindings 0..nv-1.
  UExpr iexpr(int nv, int depth) {
    if (depth == 0 || coin(35)) return coin(60) ? var(pick(0, nv - 1)) : lit(pick(-3, 9));
    static const O::Op ops[] = {O::Add, O::Sub, O::Mul, O::Min, O::Max, O::Mod};
    O::Op op = ops[pick(0, 5)];
    if (op == O::Mod) return bin(O::Mod, iexpr(nv, depth - 1), lit(pick(2, 5)));
    return bin(op, iexpr(nv, depth - 1), iexpr(nv, depth - 1));
  }

  UExpr pred(int nv) {
    static const O::Op cmps[] = {O::Lt, O::Le, O::Gt, O::Ge, O::Eq, O::Ne};
    UExpr p = bin(cmps[pick(0, 5)], iexpr(nv, 1), lit(pick(-2, 8)));
    if (coin(20)) p = bin(coin(50) ? O::And : O::Or, p, bin(cmps[pick(0, 5)], var(0), lit(pick(0, 6))));
    if (coin(10)) p = not_u(p);
    return p;
  }

  PipeExpr source(int nv) {
    switch (pick(0, 4)) {
      case 0:
      case 1: return of_arr(pick(1, 2));
      case 2: {
        std::vector<int64_t> xs(static_cast<size_t>(pick(0, 6)));
        for (auto& x : xs) x = pick(-4, 12);
        return of_list(xs);
      }
      case 3: return from_to(nv > 0 ? iexpr(nv, 1) : lit(pick(-2, 3)), lit(pick(-1, 8)));
      default: return take(iota(nv > 0 ? iexpr(nv, 1) : lit(pick(-3, 3))), lit(pick(0, 7)));
    }
  }

  // nv counts the bindings visible from enclosing flat_maps, the item excluded.
  PipeExpr transform(PipeExpr s, int nv, int depth, bool allow_nest) {
    int n = nv + 1;
    switch (pick(0, 13)) {
      case 0:
      case 1: return map(s, iexpr(n, 2));
      case 2: return filter(s, pred(n));
      case 3: return take_while(s, pred(n));
      case 4: return drop_while(s, pred(n));
      case 5: return take(s, lit(pick(0, 9)));
      case 6: return drop(s, lit(pick(0, 4)));
      case 7: return scan_sum(s);
      case 8: return diff(s);
      case 9:
      case 10:
        if (!allow_nest || depth <= 0) return map(s, iexpr(n, 1));
        return flat_map(s, pipe(n, depth - 1, nv < 1));
      case 11:
        if (depth <= 0) return filter(s, pred(n));
        return zip(s, pipe(nv, depth - 1, allow_nest), bin(coin(50) ? O::Add : O::Sub, var(0), var(1)));
      case 12: {
        // bools to run lengths and back; bytes stay small
        PipeExpr bits = map(s, bin(O::Eq, bin(O::Mod, var(0), lit(3)), lit(0)));
        return coin(50) ? rle_encode(bits) : map(rle_decode(rle_encode(bits)), to_int(var(0)));
      }
      default: {
        PipeExpr bytes = map(s, bin(O::Mod, bin(O::Add, bin(O::Mod, var(0), lit(4)), lit(4)), lit(4)));
        return map(rle_decode(bytes), to_int(var(0)));
      }
    }
  }

  PipeExpr pipe(int nv, int depth, bool allow_nest) {
    PipeExpr s = source(nv);
    int steps = pick(0, 3);
    for (int i = 0; i < steps; i++) s = transform(s, nv, depth, allow_nest);
    return s;
  }

  PipeExpr nested(int depth) {
    PipeExpr s = pipe(0, 0, false);
    s = flat_map(s, pipe(1, depth, false));
    int steps = pick(0, 2);
    for (int i = 0; i < steps; i++) {
      switch (pick(0, 3)) {
        case 0: s = map(s, iexpr(1, 2)); break;
        case 1: s = filter(s, pred(1)); break;
        case 2: s = take(s, lit(pick(0, 20))); break;
        default: s = scan_sum(s); break;
      }
    }
    return s;
  }

  Arrays inputs() {
    Arrays a(2);
    for (auto& v : a) {
      v.resize(static_cast<size_t>(pick(0, 9)));
      for (auto& x : v) x = pick(-5, 20);
    }
    return a;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<CorpusCase> finite_corpus(uint64_t seed, int count) {
  Gen g(seed);
  std::vector<CorpusCase> r;
  for (int i = 0; i < count; i++) {
    Terminal t = g.coin(30) ? Terminal::Sum : Terminal::Collect;
    PipeExpr body = g.pipe(0, 2, true);
    r.push_back({Pipeline{body, t}, g.inputs()});
  }
  return r;
}

std::vector<CorpusCase> nested_corpus(uint64_t seed, int count) {
  Gen g(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<CorpusCase> r;
  for (int i = 0; i < count; i++) {
    PipeExpr n = g.nested(1);
    r.push_back({Pipeline{zip(linearize(n), iota(lit(0))), Terminal::Collect}, g.inputs()});
  }
  return r;
}

NfAudit nf_audit(const Pipeline& p) {
  NfAudit a;
  sc::set_op_observer([&a](const char* op, const sc::Stream& s) {
    a.ops++;
    auto rep = sc::nf_check(s);
    if (!rep.ok) {
      if (a.failures++ == 0) a.first_failure = std::string(op) + ": " + rep.why;
    }
  });
  try {
    bir::SessionScope scope;
    build_stm(p);
  } catch (...) {
    sc::set_op_observer(nullptr);
    throw;
  }
  sc::set_op_observer(nullptr);
  return a;
}

namespace {

struct QScan {
  std::map<const bir::VarInfo*, std::set<int64_t>> assigned;
  std::set<const bir::VarInfo*> init1, driven;

  static bool lit_is(const bir::Exp& e, int64_t v) {
    return e.valid() && e.node().kind == bir::ExpNode::Lit && e.node().ty == bir::Ty::Int && e.node().ival == v;
  }

  // (q & 2) != 0
  void drive(const bir::Exp& c) {
    const auto& n = c.node();
    if (n.kind != bir::ExpNode::Binary || n.op != static_cast<int>(bir::BinOp::Ne) || !lit_is(n.b, 0)) return;
    const auto& m = n.a.node();
    if (m.kind != bir::ExpNode::Binary || m.op != static_cast<int>(bir::BinOp::LogAnd) || !lit_is(m.b, 2)) return;
    if (m.a.node().kind == bir::ExpNode::Deref) driven.insert(m.a.node().var.get());
  }

  void stm(const bir::Stm& s) {
    if (!s.valid()) return;
    const auto& n = s.node();
    switch (n.kind) {
      case bir::StmNode::Seq:
        for (const auto& x : n.stms) stm(x);
        break;
      case bir::StmNode::NewRef:
        if (lit_is(n.e, 1)) init1.insert(n.var.get());
        stm(n.body);
        break;
      case bir::StmNode::Assign:
        if (n.e.node().kind == bir::ExpNode::Lit) assigned[n.var.get()].insert(n.e.node().ival);
        break;
      case bir::StmNode::While:
        drive(n.e);
        stm(n.body);
        break;
      case bir::StmNode::If:
        stm(n.body);
        stm(n.els);
        break;
      default: stm(n.body); break;
    }
  }
};

}  // namespace

bool has_q_machine(const bir::Stm& body) {
  QScan q;
  q.stm(body);
  for (const auto* v : q.driven) {
    if (!q.init1.count(v)) continue;
    const auto& a = q.assigned[v];
    if (a.count(0) && a.count(3) && a.count(5) && a.count(7)) return true;
  }
  return false;
}

std::vector<std::string> scan_c_constructs(std::string c) {
  std::vector<std::string> out;
  c = std::regex_replace(c, std::regex(R"(/\*[\s\S]*?\*/)"), " ");
  c = std::regex_replace(c, std::regex(R"(^#.*$)", std::regex::multiline), " ");
  c = std::regex_replace(c, std::regex(R"("([^"\\]|\\.)*")"), "\"\"");
  static const std::set<std::string> allowed = {"while", "if", "printf", "fn", "return"};
  static const std::set<std::string> banned = {"struct", "union", "malloc", "calloc", "realloc", "alloca", "free", "goto"};
  std::regex ident(R"(([A-Za-z_][A-Za-z_0-9]*)(\s*\()?)");
  for (auto it = std::sregex_iterator(c.begin(), c.end(), ident); it != std::sregex_iterator(); ++it) {
    std::string id = (*it)[1];
    if (banned.count(id)) out.push_back("construct: " + id);
    if ((*it)[2].matched && !allowed.count(id)) out.push_back("call: " + id);
  }
  return out;
}

FusionAudit fusion_audit(const Pipeline& p) {
  FusionAudit r;
  bir::SessionScope scope;
  bir::Stm body = build_stm(p);
  auto g = bir::grammar_audit(body);
  for (const auto& v : g.violations) r.violations.push_back("grammar: " + v);
  auto h = bir::hygiene_check(body);
  for (const auto& v : h.violations) r.violations.push_back("hygiene: " + v);
  // heap arrays never appear; static arrays are the only declared storage
  for (const char* k : {"new_array", "new_uarray"}) {
    auto it = g.node_counts.find(k);
    if (it != g.node_counts.end() && it->second > 0) r.violations.push_back(std::string("allocation: ") + k);
  }

  for (auto& v : scan_c_constructs(bir::emit_c(body, params_of(p)))) r.violations.push_back(std::move(v));
  r.ok = r.violations.empty();
  return r;
}

}  // namespace pc
