// User-facing stream combinators, defined purely over the raw API.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stream_core/stream.hpp"

namespace ss {

using bir::ArrVar;
using bir::Exp;
using bir::MutVar;
using bir::Stm;
using sc::Consumer;
using sc::Item;
using sc::Stream;

// A stream whose items are single code values.
using CStream = Stream;

using ExpFn = std::function<Exp(const Exp&)>;
using ExpFn2 = std::function<Exp(const Exp&, const Exp&)>;

struct Monoid {
  Exp unit;
  ExpFn2 op;
};

// ---- producers ----
CStream iota(const Exp& n);
CStream from_to(const Exp& a, const Exp& b);
CStream of_arr(const ArrVar& a);
CStream of_int_array(std::vector<int64_t> vals);
// Indices 0..upb inclusive, each handed to body in continuation style.
Stream pull_array(const Exp& upb, std::function<Stm(const Exp&, const Consumer&)> body);

// ---- transformers ----
CStream map(const ExpFn& f, const CStream& s);
CStream filter(const ExpFn& p, const CStream& s);
Stream take(const Exp& n, const Stream& s);
CStream take_while(const ExpFn& p, const CStream& s);
Stream drop(const Exp& n, const Stream& s);
CStream drop_while(const ExpFn& p, const CStream& s);
CStream scan(const ExpFn2& f, const Exp& z, const CStream& s);
// f(acc, x, k) calls k(out, new_acc) exactly once.
CStream map_accum(const Exp& z,
                  std::function<Stm(const Exp&, const Exp&, const std::function<Stm(const Exp&, const Exp&)>&)> f,
                  const CStream& s);
Stream zip_with(std::function<Item(const Item&, const Item&)> f, const Stream& s1, const Stream& s2);
CStream zip_with_exp(const ExpFn2& f, const CStream& s1, const CStream& s2);
Stream flat_map(std::function<Stream(const Exp&)> f, const CStream& s);

// ---- consumers ----
Stm iter(std::function<Stm(const Item&)> f, const Stream& s);
Stm fold(const ExpFn2& f, const Exp& z, const CStream& s, bool wide = false);
Stm sum(const CStream& s);
Stm sum_long(const CStream& s);  // int64_t accumulator in C

// ---- showcase programs ----
CStream diff(const CStream& s);
CStream rle_encode(const CStream& bools);
CStream rle_decode(const CStream& bytes);

// Mealy machine. tr(state, input, k) calls k(output?, new_state) once.
using MealyK = std::function<Stm(const std::optional<Item>&, const Exp&)>;
using MealyTr = std::function<Stm(const Exp&, const Item&, const MealyK&)>;
Stream map_accum_filter(const Exp& z, MealyTr tr, const Stream& s);

// Digits accumulate into a number; any other char emits (number, char).
Stream parse_ints(const CStream& chars);
// Folds values with the monoid while the delimiter equals sep; any other
// delimiter emits (aggregate, delimiter) and resets.
Stream group_by_aggregate(const Exp& sep, const Monoid& m, const Stream& pairs);

}  // namespace ss
