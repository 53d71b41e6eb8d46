// Randomized bounded-bisimulation checks of the stream equations, each
// paired with a deliberately broken variant that must fail.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracle_semantics/oracle.hpp"

namespace os {

struct LawResult {
  int number = 0;
  std::string name;
  bool weak = false;
  int instances = 0;
  int counterexamples = 0;
  std::optional<Counterexample> first_counterexample;
  int negative_instances = 0;
  int negative_detected = 0;  // broken-variant instances that were caught
  bool passed() const { return instances > 0 && counterexamples == 0 && negative_detected > 0; }
};

struct LawSuiteOptions {
  uint64_t seed = 1;
  int instances = 100;
  int fuel = 50;
  int only = 0;  // 0 = all laws
  // Test fixture: law number whose broken variant replaces the real one.
  int inject_broken = 0;
};

int law_count();
std::string law_name(int number);
std::vector<LawResult> run_law_suite(const LawSuiteOptions& opt = {});
nlohmann::json law_report_json(const std::vector<LawResult>& rs, const LawSuiteOptions& opt);

}  // namespace os
