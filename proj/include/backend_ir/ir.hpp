// Typed builders for a first-order imperative target language.
#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bir {

enum class Ty { Bool, Int, F64, Unit };

const char* ty_name(Ty t);

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VarInfo {
  std::string name;
  Ty ty;
  bool wide = false;  // rendered as int64_t in C
};

struct ArrInfo {
  std::string name;
  Ty elem;
  std::optional<int64_t> static_len;
  int param_index = 0;  // 1-based for function parameters, 0 otherwise
  std::string len_name;
};

using VarP = std::shared_ptr<const VarInfo>;
using ArrP = std::shared_ptr<const ArrInfo>;

// Mutable cell handle. Not an expression: read it with dref.
class MutVar {
 public:
  MutVar() = default;
  explicit MutVar(VarP p) : p_(std::move(p)) {}
  const std::string& name() const { return p_->name; }
  Ty ty() const { return p_->ty; }
  bool wide() const { return p_->wide; }
  const VarP& info() const { return p_; }
  bool valid() const { return p_ != nullptr; }

 private:
  VarP p_;
};

class ArrVar {
 public:
  ArrVar() = default;
  explicit ArrVar(ArrP p) : p_(std::move(p)) {}
  const std::string& name() const { return p_->name; }
  Ty elem_ty() const { return p_->elem; }
  std::optional<int64_t> static_len() const { return p_->static_len; }
  const ArrP& info() const { return p_; }
  bool valid() const { return p_ != nullptr; }

 private:
  ArrP p_;
};

enum class BinOp {
  Add, Sub, Mul, Div, Mod, LogAnd, IMax, IMin,
  Eq, Ne, Lt, Le, Gt, Ge,
  And, Or,
  FAdd, FSub, FMul, FDiv, FLt
};
enum class UnOp { Not, Neg, IntOfBool, FOfInt };

const char* binop_symbol(BinOp op);

struct ExpNode;
using ExpP = std::shared_ptr<const ExpNode>;

class Exp {
 public:
  Exp() = default;
  explicit Exp(ExpP n) : n_(std::move(n)) {}
  Ty ty() const;
  const ExpNode& node() const { return *n_; }
  const ExpP& ptr() const { return n_; }
  bool valid() const { return n_ != nullptr; }
  bool is_lit_bool(bool v) const;

 private:
  ExpP n_;
};

struct ExpNode {
  enum Kind { Lit, VarRead, Deref, Unary, Binary, Cond, ArrGet, ArrLen };
  Kind kind;
  Ty ty;
  int64_t ival = 0;
  double fval = 0;
  VarP var;
  ArrP arr;
  int op = 0;
  Exp a, b, c;
};

struct StmNode;
using StmP = std::shared_ptr<const StmNode>;

class Stm {
 public:
  Stm() = default;
  explicit Stm(StmP n) : n_(std::move(n)) {}
  const StmNode& node() const { return *n_; }
  const StmP& ptr() const { return n_; }
  bool valid() const { return n_ != nullptr; }

 private:
  StmP n_;
};

struct StmNode {
  enum Kind {
    Skip, Seq, Let, NewRef, Assign, Incr, Decr, If, While,
    ArrSet, NewArray, NewStaticArray, NewUArray, Print, Return
  };
  Kind kind;
  std::vector<Stm> stms;  // Seq
  VarP var;               // Let, NewRef, Assign, Incr, Decr
  ArrP arr;               // array statements
  Exp e, e2;              // initializer / condition / index, value / printed / returned
  std::vector<Exp> elems;
  std::vector<int64_t> ivals;
  Stm body, els;
};

const char* stm_kind_name(StmNode::Kind k);
const char* exp_kind_name(ExpNode::Kind k);

// Fresh-name source. One session per thread of control.
class Session {
 public:
  explicit Session(uint64_t seed = 0) : seed_(seed) {}
  std::string fresh(const char* prefix);
  uint64_t seed() const { return seed_; }
  int counter() const { return counter_; }
  static Session& current();

 private:
  uint64_t seed_;
  int counter_ = 0;
};

// Installs a session as current for the enclosing scope.
class SessionScope {
 public:
  explicit SessionScope(uint64_t seed = 0);
  ~SessionScope();
  SessionScope(const SessionScope&) = delete;
  SessionScope& operator=(const SessionScope&) = delete;
  Session& session() { return s_; }

 private:
  Session s_;
  Session* prev_;
};

// literals
Exp int_(int64_t v);
Exp bool_(bool v);
Exp f64(double v);

// arithmetic, comparison, logic
Exp binop(BinOp op, const Exp& a, const Exp& b);
Exp unop(UnOp op, const Exp& a);
Exp logand(const Exp& a, const Exp& b);
Exp imax(const Exp& a, const Exp& b);
Exp imin(const Exp& a, const Exp& b);
Exp not_(const Exp& a);
Exp int_of_bool(const Exp& a);
Exp cond(const Exp& c, const Exp& t, const Exp& e);

Exp operator+(const Exp& a, const Exp& b);
Exp operator-(const Exp& a, const Exp& b);
Exp operator*(const Exp& a, const Exp& b);
Exp operator/(const Exp& a, const Exp& b);
Exp operator%(const Exp& a, const Exp& b);
Exp operator==(const Exp& a, const Exp& b);
Exp operator!=(const Exp& a, const Exp& b);
Exp operator<(const Exp& a, const Exp& b);
Exp operator<=(const Exp& a, const Exp& b);
Exp operator>(const Exp& a, const Exp& b);
Exp operator>=(const Exp& a, const Exp& b);
Exp operator&&(const Exp& a, const Exp& b);
Exp operator||(const Exp& a, const Exp& b);
Exp operator!(const Exp& a);
Exp operator-(const Exp& a);

namespace F64 {
Exp of_int(const Exp& a);
Exp add(const Exp& a, const Exp& b);
Exp sub(const Exp& a, const Exp& b);
Exp mul(const Exp& a, const Exp& b);
Exp div(const Exp& a, const Exp& b);
Exp lt(const Exp& a, const Exp& b);
}  // namespace F64

// statements
Stm skip();
Stm seq(const Stm& a, const Stm& b);
Stm seq(std::initializer_list<Stm> xs);
Stm if_(const Exp& c, const Stm& t, const Stm& e);
Stm if1(const Exp& c, const Stm& t);
Stm while_(const Exp& c, const Stm& body);
Stm letl(const Exp& e, const std::function<Stm(const Exp&)>& k);
Stm newref(const Exp& init, const std::function<Stm(const MutVar&)>& k, bool wide = false);
Exp dref(const MutVar& v);
Stm assign(const MutVar& v, const Exp& e);
Stm incr(const MutVar& v);
Stm decr(const MutVar& v);
Stm print(const Exp& e);
Stm ret(const Exp& e);

// arrays
Exp array_get_(const ArrVar& a, const Exp& idx);
Stm array_get(const ArrVar& a, const Exp& idx, const std::function<Stm(const Exp&)>& k);
Exp array_len(const ArrVar& a);
Stm array_set(const ArrVar& a, const Exp& idx, const Exp& v);
Stm new_array(Ty elem, const std::vector<Exp>& elems, const std::function<Stm(const ArrVar&)>& k);
Stm new_static_array(Ty elem, const std::vector<int64_t>& vals,
                     const std::function<Stm(const ArrVar&)>& k);
Stm new_uarray(Ty elem, int64_t n, const std::function<Stm(const ArrVar&)>& k);

// Function parameter array a<i> with length n<i> (1-based).
ArrVar param_array(int index, Ty elem = Ty::Int);

}  // namespace bir
