// Structural checks over target ASTs: node grammar, allocation placement, scoping.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "backend_ir/ir.hpp"

namespace bir {

struct AuditReport {
  bool ok = true;
  std::map<std::string, int> node_counts;  // keyed by stm_kind_name / exp_kind_name
  int loop_depth_max = 0;
  std::vector<std::string> violations;
};

// Walks every node. Flags unknown node kinds, malformed children and any
// heap array allocation inside a loop body. Static arrays are constant data
// hoisted by the emitter, and scalar cells inside loops are stack locals;
// both are allowed.
AuditReport grammar_audit(const Stm& body);

struct HygieneReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Every binder name is unique and every use sits inside its binder's scope.
// Mutable cells are only read through dref, immutable lets only by name.
HygieneReport hygiene_check(const Stm& body);

}  // namespace bir
