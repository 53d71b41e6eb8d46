// Random pipelines for property checks, and structural audits of emitted code.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "backend_ir/ir.hpp"
#include "pipec_cli/registry.hpp"

namespace pc {

struct CorpusCase {
  Pipeline pipeline;
  Arrays inputs;
};

// Finite pipelines over two small param arrays, mixing every combinator the
// generator knows, including nesting and zips.
std::vector<CorpusCase> finite_corpus(uint64_t seed, int count);

// zip(linearize(N), iota 0) where N is a nested pipeline, keeping pairs.
std::vector<CorpusCase> nested_corpus(uint64_t seed, int count);

// ---- audits ----

// Runs nf_check on the result of every raw operation performed while
// staging the pipeline.
struct NfAudit {
  int ops = 0;
  int failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && ops > 0; }
};
NfAudit nf_audit(const Pipeline& p);

// The four-state machine of nested linearization: a cell initialized to 1,
// assigned each of 0, 3, 5 and 7, driving a loop on (q & 2) != 0.
bool has_q_machine(const bir::Stm& body);

// No calls, closures, tuples or heap allocation in the emitted code: the
// AST passes the grammar and hygiene audits, and the C text calls nothing
// but printf.
struct FusionAudit {
  bool ok = true;
  std::vector<std::string> violations;
};
FusionAudit fusion_audit(const Pipeline& p);
// The C half: calls other than printf, and struct/heap/goto constructs.
std::vector<std::string> scan_c_constructs(std::string c_source);

}  // namespace pc
