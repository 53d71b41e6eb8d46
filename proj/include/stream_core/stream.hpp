// Raw stream API computed by normalization-by-evaluation. Stream values are
// normal forms over implicit mutable target-code state.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "backend_ir/ir.hpp"

namespace sc {

using bir::ArrVar;
using bir::Exp;
using bir::MutVar;
using bir::Stm;
using bir::Ty;

// Meta-level stream item: one code value, a tuple of items, or unit.
// Pairs produced by zip never reach generated code.
class Item {
 public:
  enum Kind { Unit, Leaf, Tuple };

  Item() = default;
  Item(const Exp& e) : kind_(Leaf), e_(e) {}  // NOLINT: items are written as plain Exps
  static Item unit() { return Item(); }
  static Item pair(const Item& a, const Item& b) { return tuple({a, b}); }
  static Item tuple(std::vector<Item> xs);

  Kind kind() const { return kind_; }
  bool is_unit() const { return kind_ == Unit; }
  bool is_leaf() const { return kind_ == Leaf; }
  const Exp& exp() const;
  const std::vector<Item>& parts() const;
  const Item& operator[](size_t i) const { return parts().at(i); }
  const Item& first() const { return (*this)[0]; }
  const Item& second() const { return (*this)[1]; }

  // leaves in left-to-right order
  std::vector<Exp> leaves() const;
  std::string shape() const;

 private:
  Kind kind_ = Unit;
  Exp e_;
  std::shared_ptr<const std::vector<Item>> parts_;
};

using Consumer = std::function<Stm(const Item&)>;
using Emitter = std::function<Stm(const Consumer&)>;

struct FlatRec {
  Emitter unr;
  Exp grd;
  bool linear = true;
};

struct StreamNode;

class Stream {
 public:
  Stream() = default;
  explicit Stream(std::shared_ptr<const StreamNode> n) : n_(std::move(n)) {}
  const StreamNode& node() const { return *n_; }
  bool valid() const { return n_ != nullptr; }

 private:
  std::shared_ptr<const StreamNode> n_;
};

using InnerFn = std::function<Stream(const Item&)>;

struct StreamNode {
  enum Kind { Init, Flat, Nested };
  enum InitKind { Ref, Let, StaticArray };
  Kind kind = Flat;

  // Init
  InitKind ikind = Ref;
  Exp init;
  bool wide = false;
  Ty elem = Ty::Int;
  std::vector<int64_t> vals;
  std::function<Stream(const MutVar&)> k_ref;
  std::function<Stream(const Exp&)> k_let;
  std::function<Stream(const ArrVar&)> k_arr;

  // Flat, or the producer of Nested
  FlatRec flat;

  // Nested
  InnerFn inner;
  Exp trailing;
};

// ---- constructors ----
Stream initializing(const Exp& e, std::function<Stream(const Exp&)> k);
Stream initializing_ref(const Exp& e, std::function<Stream(const MutVar&)> k, bool wide = false);
Stream initializing_static_array(Ty elem, std::vector<int64_t> vals, std::function<Stream(const ArrVar&)> k);
Stream infinite(Emitter unr);
Stream flat(FlatRec r);

// ---- transformers ----
Stream guard(const Exp& g, const Stream& s);
Stream map_raw(std::function<Stm(const Item&, const Consumer&)> f, const Stream& s, bool linear = true);
Stream map_raw_pure(std::function<Item(const Item&)> f, const Stream& s);
Stream filter_raw(std::function<Exp(const Item&)> p, const Stream& s);
Stream flat_map_raw(InnerFn f, const Stream& s);
Stream zip_raw(const Stream& s1, const Stream& s2);

// ---- linearization ----
struct Complexity {
  int depth = 0;
  bool linear = true;
};
bool operator<(const Complexity& a, const Complexity& b);
Complexity complexity(const Stream& s);

// Converts the inner-stream function into cells holding the outer item plus
// a Flat core reading them and a statement re-initializing the inner state.
// The allocations appear as the Init spine of the returned stream.
struct ClosureConverted {
  std::vector<MutVar> item_cells;
  FlatRec core;
  Stm reinit;
};
Stream closure_convert(const InnerFn& f, const Item& item_shape,
                       const std::function<Stream(const ClosureConverted&)>& k);

Stream linearize(const Stream& s);

// ---- consumption ----
Stm iter(const Consumer& consumer, const Stream& s);

// ---- inspection ----

// Shape of the items a stream produces, as an Item over placeholder leaves.
Item item_shape(const Stream& s);

struct NfReport {
  bool ok = true;
  std::string why;
  int init_count = 0;
  int depth = 0;
};
NfReport nf_check(const Stream& s);

// Short structural rendering for diagnostics: Init(ref)>Init(ref)>Flat[lin].
std::string describe(const Stream& s);

// Called after every raw operation with its name and result. Thread-local.
using OpObserver = std::function<void(const char*, const Stream&)>;
void set_op_observer(OpObserver obs);

}  // namespace sc
