// C pretty-printer for the target AST.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "backend_ir/ir.hpp"

namespace bir {

struct EmitOptions {
  std::string fn_name = "fn";
  std::string pipeline_name = "anonymous";
  uint64_t seed = 0;
};

// One self-contained C translation unit holding a single function. The
// parameters are the array handles made by param_array, in index order.
std::string emit_c(const Stm& body, const std::vector<ArrVar>& params, const EmitOptions& opt = {});

// C return type the emitter picks for this body ("void" when it never returns).
std::string c_return_type(const Stm& body);

// Exp rendered on its own, as it would appear inside a statement.
std::string render_exp(const Exp& e);

}  // namespace bir
