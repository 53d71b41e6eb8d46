// Token-level alpha-normalization of C source for golden comparison.
#pragma once

#include <string>
#include <vector>

namespace bir {

// Drops comments and preprocessor lines, tokenizes, and renames every
// non-keyword identifier to id<N> by order of first appearance.
std::vector<std::string> alpha_normalize_c(const std::string& src);

struct AlphaDiff {
  bool equal = true;
  size_t index = 0;  // first differing token
  std::string lhs, rhs;
};

AlphaDiff alpha_compare_c(const std::string& a, const std::string& b);

}  // namespace bir
