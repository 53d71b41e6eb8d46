#include "pipec_cli/registry.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <stdexcept>

namespace pc {

const char* input_name(InputKind k) {
  switch (k) {
    case InputKind::V: return "v";
    case InputKind::VHi: return "vHi";
    case InputKind::VLo: return "vLo";
    case InputKind::VFaZ: return "vFaZ";
    case InputKind::VZaF: return "vZaF";
  }
  return "?";
}

size_t input_length(InputKind k, size_t size) {
  switch (k) {
    case InputKind::VLo: return std::min<size_t>(size, 10);
    case InputKind::VFaZ: {
      auto r = static_cast<size_t>(std::sqrt(static_cast<double>(size)));
      while (r * r < size) r++;
      while (r > 0 && (r - 1) * (r - 1) >= size) r--;
      return r;
    }
    default: return size;
  }
}

int64_t input_fill(InputKind k, size_t i) {
  switch (k) {
    case InputKind::VFaZ:
    case InputKind::VZaF: return static_cast<int64_t>(i);
    default: return static_cast<int64_t>(i % 10);
  }
}

std::vector<int64_t> make_input(InputKind k, size_t size) {
  std::vector<int64_t> r(input_length(k, size));
  for (size_t i = 0; i < r.size(); i++) r[i] = input_fill(k, i);
  return r;
}

Arrays PipelineSpec::make_inputs(size_t size) const {
  Arrays r;
  for (auto k : inputs) r.push_back(make_input(k, size));
  return r;
}

void Registry::add(PipelineSpec spec) {
  if (index_.count(spec.name)) throw std::logic_error("duplicate pipeline name: " + spec.name);
  index_[spec.name] = specs_.size();
  specs_.push_back(std::move(spec));
}

const PipelineSpec* Registry::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &specs_[it->second];
}

const PipelineSpec& Registry::at(const std::string& name) const {
  const auto* p = find(name);
  if (!p) throw std::out_of_range("unknown pipeline: " + name);
  return *p;
}

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = {
      "sum",         "sumOfSquares",    "sumOfSquaresEven", "cart",        "mapsMegamorphic",
      "filtersMegamorphic", "dotProduct", "flatMapAfterZip", "zipAfterFlatMap", "flatMapTake",
      "zipFilterFilter",    "zipFlatMapFlatMap", "decode"};
  return names;
}

std::vector<int64_t> grouping_chars() {
  std::string s = "100,200,300|400|500,600|700,800,900|1000";
  std::vector<int64_t> r(s.begin(), s.end());
  r.push_back(0);
  return r;
}

// ---- references: plain loops over the inputs ----

namespace {

using O = UExprNode;

Outcome fold_value(int64_t v) {
  Outcome o;
  o.value = v;
  return o;
}

Outcome items_of(std::vector<int64_t> xs) {
  Outcome o;
  o.items = std::move(xs);
  return o;
}

// Items of of_arr a |> flat_map (fun x -> of_arr b |> map f), one at a time.
class CartCursor {
 public:
  CartCursor(const std::vector<int64_t>& a, const std::vector<int64_t>& b, std::function<int64_t(int64_t, int64_t)> f)
      : a_(a), b_(b), f_(std::move(f)) {}
  bool next(int64_t& out) {
    if (b_.empty()) return false;
    if (j_ == b_.size()) {
      j_ = 0;
      i_++;
    }
    if (i_ >= a_.size()) return false;
    out = f_(a_[i_], b_[j_++]);
    return true;
  }

 private:
  const std::vector<int64_t>& a_;
  const std::vector<int64_t>& b_;
  std::function<int64_t(int64_t, int64_t)> f_;
  size_t i_ = 0, j_ = 0;
};

int64_t mul(int64_t x, int64_t y) { return x * y; }

// Decoded bits of a byte array, one at a time.
class DecodeCursor {
 public:
  explicit DecodeCursor(const std::vector<int64_t>& bytes) : bytes_(bytes) {}
  bool next(int64_t& out) {
    while (k_ < bytes_.size()) {
      int64_t b = bytes_[k_];
      if (zeros_ < b) {
        zeros_++;
        out = 0;
        return true;
      }
      k_++;
      zeros_ = 0;
      if (b != 255) {
        out = 1;
        return true;
      }
    }
    return false;
  }

 private:
  const std::vector<int64_t>& bytes_;
  size_t k_ = 0;
  int64_t zeros_ = 0;
};

int64_t sum_of(const std::vector<int64_t>& xs) {
  int64_t s = 0;
  for (auto x : xs) s += x;
  return s;
}

std::vector<int64_t> decode_bits(const std::vector<int64_t>& bytes) {
  std::vector<int64_t> r;
  DecodeCursor c(bytes);
  for (int64_t x; c.next(x);) r.push_back(x);
  return r;
}

std::vector<int64_t> encode_bits(const std::vector<int64_t>& bits) {
  std::vector<int64_t> r;
  int64_t run = 0;
  for (auto b : bits) {
    if (b) {
      r.push_back(run);
      run = 0;
    } else if (++run == 255) {
      r.push_back(255);
      run = 0;
    }
  }
  return r;
}

UExpr v0() { return var(0); }
UExpr v1() { return var(1); }
UExpr sq() { return bin(O::Mul, v0(), v0()); }
UExpr even() { return bin(O::Eq, bin(O::Mod, v0(), lit(2)), lit(0)); }

PipelineSpec bench(std::string name, std::string summary, PipeExpr body, std::vector<InputKind> inputs,
                   std::function<int64_t(const Arrays&)> ref) {
  PipelineSpec s;
  s.name = std::move(name);
  s.summary = std::move(summary);
  s.pipeline = Pipeline{std::move(body), Terminal::SumLong};
  s.inputs = std::move(inputs);
  s.benchmark = true;
  s.reference = [ref](const Arrays& a) { return fold_value(ref(a)); };
  return s;
}

Registry build() {
  Registry r;
  using K = InputKind;

  r.add(bench("sum", "of_arr a |> sum", of_arr(1), {K::V}, [](const Arrays& a) { return sum_of(a[0]); }));

  r.add(bench("sumOfSquares", "of_arr a |> map square |> sum", map(of_arr(1), sq()), {K::V}, [](const Arrays& a) {
    int64_t s = 0;
    for (auto x : a[0]) s += x * x;
    return s;
  }));

  r.add(bench("sumOfSquaresEven", "of_arr a |> filter even |> map square |> sum", map(filter(of_arr(1), even()), sq()),
              {K::V}, [](const Arrays& a) {
                int64_t s = 0;
                for (auto x : a[0])
                  if (x % 2 == 0) s += x * x;
                return s;
              }));

  r.add(bench("cart", "of_arr a |> flat_map (fun x -> of_arr b |> map (x*)) |> sum",
              flat_map(of_arr(1), map(of_arr(2), bin(O::Mul, v1(), v0()))), {K::VHi, K::VLo},
              [](const Arrays& a) {
                int64_t s = 0;
                for (auto x : a[0])
                  for (auto y : a[1]) s += x * y;
                return s;
              }));

  {
    PipeExpr p = of_arr(1);
    for (int k = 1; k <= 7; k++) p = map(p, bin(O::Mul, v0(), lit(k)));
    r.add(bench("mapsMegamorphic", "of_arr a |> map (*1) |> ... |> map (*7) |> sum", p, {K::V}, [](const Arrays& a) {
      int64_t s = 0;
      for (auto x : a[0]) s += x * 1 * 2 * 3 * 4 * 5 * 6 * 7;
      return s;
    }));
  }
  {
    PipeExpr p = of_arr(1);
    for (int k = 1; k <= 7; k++) p = filter(p, bin(O::Gt, v0(), lit(k)));
    r.add(bench("filtersMegamorphic", "of_arr a |> filter (>1) |> ... |> filter (>7) |> sum", p, {K::V},
                [](const Arrays& a) {
                  int64_t s = 0;
                  for (auto x : a[0])
                    if (x > 7) s += x;
                  return s;
                }));
  }

  r.add(bench("dotProduct", "zip_with (*) (of_arr a) (of_arr b) |> sum", zip(of_arr(1), of_arr(2), bin(O::Mul, v0(), v1())),
              {K::VHi, K::VHi}, [](const Arrays& a) {
                int64_t s = 0;
                for (size_t i = 0; i < std::min(a[0].size(), a[1].size()); i++) s += a[0][i] * a[1][i];
                return s;
              }));

  r.add(bench("flatMapAfterZip", "zip_with (+) (of_arr a) (of_arr a) |> flat_map (fun x -> of_arr b |> map (*x)) |> sum",
              flat_map(zip(of_arr(1), of_arr(1), bin(O::Add, v0(), v1())), map(of_arr(2), bin(O::Mul, v0(), v1()))),
              {K::VFaZ, K::VFaZ}, [](const Arrays& a) {
                int64_t s = 0;
                for (auto x : a[0])
                  for (auto y : a[1]) s += y * (x + x);
                return s;
              }));

  r.add(bench("zipAfterFlatMap", "zip_with (+) (of_arr a |> flat_map (fun x -> of_arr b |> map (x*))) (of_arr a) |> sum",
              zip(flat_map(of_arr(1), map(of_arr(2), bin(O::Mul, v1(), v0()))), of_arr(1), bin(O::Add, v0(), v1())),
              {K::VZaF, K::VZaF}, [](const Arrays& a) {
                CartCursor l(a[0], a[1], mul);
                int64_t s = 0, x;
                for (size_t i = 0; i < a[0].size() && l.next(x); i++) s += x + a[0][i];
                return s;
              }));

  r.add(bench("flatMapTake", "of_arr a |> flat_map (fun x -> of_arr b |> map (x*)) |> take (2 * len a) |> sum",
              take(flat_map(of_arr(1), map(of_arr(2), bin(O::Mul, v1(), v0()))), bin(O::Mul, lit(2), len(1))),
              {K::VHi, K::VLo}, [](const Arrays& a) {
                CartCursor l(a[0], a[1], mul);
                int64_t s = 0, x;
                for (size_t i = 0; i < 2 * a[0].size() && l.next(x); i++) s += x;
                return s;
              }));

  r.add(bench("zipFilterFilter", "zip_with (+) (of_arr a |> filter (>7)) (of_arr b |> filter (>5)) |> sum",
              zip(filter(of_arr(1), bin(O::Gt, v0(), lit(7))), filter(of_arr(2), bin(O::Gt, v0(), lit(5))),
                  bin(O::Add, v0(), v1())),
              {K::V, K::VHi}, [](const Arrays& a) {
                std::vector<int64_t> l, rr;
                for (auto x : a[0])
                  if (x > 7) l.push_back(x);
                for (auto x : a[1])
                  if (x > 5) rr.push_back(x);
                int64_t s = 0;
                for (size_t i = 0; i < std::min(l.size(), rr.size()); i++) s += l[i] + rr[i];
                return s;
              }));

  r.add(bench("zipFlatMapFlatMap",
              "zip_with (+) (of_arr a |> flat_map (fun x -> of_arr b |> map (*x)))"
              " (of_arr b |> flat_map (fun x -> of_arr a |> map (- x))) |> take (2 * len a) |> sum",
              take(zip(flat_map(of_arr(1), map(of_arr(2), bin(O::Mul, v0(), v1()))),
                       flat_map(of_arr(2), map(of_arr(1), bin(O::Sub, v0(), v1()))), bin(O::Add, v0(), v1())),
                   bin(O::Mul, lit(2), len(1))),
              {K::V, K::VLo}, [](const Arrays& a) {
                CartCursor l(a[0], a[1], mul);
                CartCursor rr(a[1], a[0], [](int64_t x, int64_t el) { return el - x; });
                int64_t s = 0, x, y;
                for (size_t i = 0; i < 2 * a[0].size() && l.next(x) && rr.next(y); i++) s += x + y;
                return s;
              }));

  r.add(bench("decode", "zip_with (||) (decode a) (decode b) |> map int_of_bool |> sum",
              map(zip(rle_decode(of_arr(1)), rle_decode(of_arr(2)), bin(O::Or, v0(), v1())), to_int(v0())),
              {K::V, K::V}, [](const Arrays& a) {
                DecodeCursor l(a[0]), rr(a[1]);
                int64_t s = 0, x, y;
                while (l.next(x) && rr.next(y)) s += (x || y);
                return s;
              }));

  // ---- showcases ----
  {
    PipelineSpec s;
    s.name = "ex2";
    s.summary = "iota 1 |> map square |> filter (x mod 17 > 7) |> take 10 |> sum";
    s.pipeline = Pipeline{take(filter(map(iota(lit(1)), sq()), bin(O::Gt, bin(O::Mod, v0(), lit(17)), lit(7))), lit(10)),
                          Terminal::Sum};
    s.reference = [](const Arrays&) {
      int64_t acc = 0;
      int taken = 0;
      for (int64_t i = 1; taken < 10; i++)
        if ((i * i) % 17 > 7) {
          acc += i * i;
          taken++;
        }
      return fold_value(acc);
    };
    r.add(std::move(s));
  }
  {
    PipelineSpec s;
    s.name = "complexZip";
    s.summary = "zip ([0..3] |> map sq |> take 12 |> filter even |> map sq)"
                " (iota 1 |> flat_map (fun x -> iota (x+1) |> take 3) |> filter even) |> print";
    s.pipeline = Pipeline{zip(map(filter(take(map(of_list({0, 1, 2, 3}), sq()), lit(12)), even()), sq()),
                              filter(flat_map(iota(lit(1)), take(iota(bin(O::Add, v0(), lit(1))), lit(3))), even())),
                          Terminal::Collect};
    s.reference = [](const Arrays&) {
      std::vector<int64_t> l, rr, out;
      for (int64_t x : {0, 1, 2, 3})
        if ((x * x) % 2 == 0) l.push_back(x * x * x * x);
      for (int64_t x = 1; rr.size() < l.size(); x++)
        for (int64_t y = x + 1; y <= x + 3; y++)
          if (y % 2 == 0) rr.push_back(y);
      for (size_t i = 0; i < l.size(); i++) {
        out.push_back(l[i]);
        out.push_back(rr[i]);
      }
      return items_of(out);
    };
    r.add(std::move(s));
  }
  {
    PipelineSpec s;
    s.name = "rle";
    s.summary = "of_arr a |> map (<> 0) |> rle_encode |> rle_decode |> print";
    s.pipeline = Pipeline{rle_decode(rle_encode(map(of_arr(1), bin(O::Ne, v0(), lit(0))))), Terminal::Collect};
    s.inputs = {InputKind::V};
    s.reference = [](const Arrays& a) {
      std::vector<int64_t> bits;
      for (auto x : a[0]) bits.push_back(x != 0);
      return items_of(decode_bits(encode_bits(bits)));
    };
    r.add(std::move(s));
  }
  {
    PipelineSpec s;
    s.name = "grouping";
    s.summary = "chars |> parse_ints |> group ',' sum |> group '|' max |> fst |> take 1 |> print";
    s.pipeline = Pipeline{take(fst(group_by(group_by(parse_ints(of_list(grouping_chars())), ',', false), '|', true)), lit(1)),
                          Terminal::Collect};
    s.reference = [](const Arrays&) {
      // numbers by comma, chunks by bar, first maximum
      auto cs = grouping_chars();
      int64_t num = 0, chunk = 0, best = INT32_MIN;
      for (auto c : cs) {
        if (c >= '0' && c <= '9') {
          num = num * 10 + (c - '0');
          continue;
        }
        chunk += num;
        num = 0;
        if (c == ',') continue;
        best = std::max(best, chunk);
        chunk = 0;
        if (c != '|') return items_of({best});
      }
      return items_of({});
    };
    r.add(std::move(s));
  }
  return r;
}

}  // namespace

const Registry& builtin_registry() {
  static const Registry reg = build();
  return reg;
}

}  // namespace pc
