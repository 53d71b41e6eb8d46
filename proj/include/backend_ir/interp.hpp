// Reference interpreter for the target AST. Integers are int64 with wrap-around.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "backend_ir/ir.hpp"

namespace bir {

struct RuntimeFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : RuntimeFault {
  using RuntimeFault::RuntimeFault;
};

struct Value {
  Ty ty = Ty::Unit;
  int64_t i = 0;
  double f = 0;
};

struct InterpResult {
  std::optional<Value> ret;
  std::vector<std::string> trace;  // one entry per print, formatted like the emitted printf
  uint64_t steps = 0;
};

struct InterpOptions {
  uint64_t step_budget = 2'000'000'000ULL;
};

// arrays[i] feeds param_array(i + 1).
InterpResult interpret(const Stm& body, const std::vector<std::vector<int64_t>>& arrays = {},
                       const InterpOptions& opt = {});

// Evaluates a closed expression.
Value eval_closed(const Exp& e);

}  // namespace bir
