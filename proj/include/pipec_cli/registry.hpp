// Named pipelines: the benchmark suite and the showcase programs.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pipec_cli/pipe_expr.hpp"

namespace pc {

using Arrays = std::vector<std::vector<int64_t>>;

// Input array kinds of the benchmark table.
enum class InputKind { V, VHi, VLo, VFaZ, VZaF };

const char* input_name(InputKind k);
size_t input_length(InputKind k, size_t size);
// Pure in the index.
int64_t input_fill(InputKind k, size_t i);
std::vector<int64_t> make_input(InputKind k, size_t size);

struct PipelineSpec {
  std::string name;
  std::string summary;
  Pipeline pipeline;
  std::vector<InputKind> inputs;  // one per param, in order
  bool benchmark = false;
  // Direct computation over the inputs, independent of both stream
  // interpretations. Folds return the value, Collect returns the checksum.
  std::function<Outcome(const Arrays&)> reference;

  Arrays make_inputs(size_t size) const;
};

class Registry {
 public:
  // Throws std::logic_error on a duplicate name.
  void add(PipelineSpec spec);
  const PipelineSpec* find(const std::string& name) const;
  const PipelineSpec& at(const std::string& name) const;  // throws std::out_of_range
  // Registration order.
  const std::vector<PipelineSpec>& all() const { return specs_; }
  bool empty() const { return specs_.empty(); }

 private:
  std::vector<PipelineSpec> specs_;
  std::map<std::string, size_t> index_;
};

const Registry& builtin_registry();

// Names of the benchmark suite, in table order.
const std::vector<std::string>& benchmark_names();

// Input for the grouping showcase, zero-terminated.
std::vector<int64_t> grouping_chars();

}  // namespace pc
