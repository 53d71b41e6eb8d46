#include "backend_ir/c_normalize.hpp"

#include <cctype>
#include <set>
#include <unordered_map>

namespace bir {

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "auto", "break", "case", "char", "const", "continue", "default", "do", "double", "else",
      "enum", "extern", "float", "for", "goto", "if", "int", "long", "register", "return",
      "short", "signed", "sizeof", "static", "struct", "switch", "typedef", "union", "unsigned",
      "void", "volatile", "while", "bool", "true", "false", "int64_t", "int32_t", "uint8_t",
      "printf", "NULL"};
  return k;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<std::string> alpha_normalize_c(const std::string& src) {
  std::vector<std::string> out;
  std::unordered_map<std::string, std::string> names;
  size_t i = 0, n = src.size();
  bool line_start = true;
  while (i < n) {
    char c = src[i];
    if (c == '\n') {
      line_start = true;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (line_start && c == '#') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    line_start = false;
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      size_t e = src.find("*/", i + 2);
      i = e == std::string::npos ? n : e + 2;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < n && ident_char(src[j])) ++j;
      std::string w = src.substr(i, j - i);
      i = j;
      if (keywords().count(w)) {
        out.push_back(w);
      } else {
        auto it = names.find(w);
        if (it == names.end()) it = names.emplace(w, "id" + std::to_string(names.size())).first;
        out.push_back(it->second);
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < n && (ident_char(src[j]) || src[j] == '.')) ++j;
      out.push_back(src.substr(i, j - i));
      i = j;
      continue;
    }
    if (c == '"') {
      size_t j = i + 1;
      while (j < n && src[j] != '"') j += src[j] == '\\' ? 2 : 1;
      out.push_back(src.substr(i, j + 1 - i));
      i = j + 1;
      continue;
    }
    static const char* ops[] = {"++", "--", "==", "!=", "<=", ">=", "&&", "||", "<<", ">>", "->"};
    bool matched = false;
    for (const char* op : ops) {
      if (src.compare(i, 2, op) == 0) {
        out.emplace_back(op);
        i += 2;
        matched = true;
        break;
      }
    }
    if (!matched) out.emplace_back(1, c), ++i;
  }
  return out;
}

AlphaDiff alpha_compare_c(const std::string& a, const std::string& b) {
  auto ta = alpha_normalize_c(a), tb = alpha_normalize_c(b);
  AlphaDiff d;
  size_t m = std::min(ta.size(), tb.size());
  for (size_t i = 0; i < m; ++i) {
    if (ta[i] != tb[i]) {
      d.equal = false;
      d.index = i;
      d.lhs = ta[i];
      d.rhs = tb[i];
      return d;
    }
  }
  if (ta.size() != tb.size()) {
    d.equal = false;
    d.index = m;
    d.lhs = m < ta.size() ? ta[m] : "<end>";
    d.rhs = m < tb.size() ? tb[m] : "<end>";
  }
  return d;
}

}  // namespace bir
