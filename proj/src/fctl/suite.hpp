#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fctl/generate.hpp"
#include "fctl/reduction.hpp"

namespace fctl {

struct SuiteConfig {
  Mode mode = kAbortiveCbv;
  std::uint64_t seed = 42;
  std::size_t count = 100;
  int max_term_depth = 8;
  double control_prob = 0.3;
  std::size_t fuel = kDefaultFuel;
  std::size_t max_examples = 3;  // failure examples kept per property
};

struct PropertyResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> examples;
};

struct SuiteReport {
  Mode mode = kAbortiveCbv;
  std::size_t programs = 0;
  std::size_t steps = 0;
  std::vector<PropertyResult> props;
  bool ok() const;
};

// Runs the six metatheory properties (termination, unique decomposition,
// plug/decompose identity, machine agreement, preservation, round-trip)
// over a generated corpus. Failing programs are shrunk before reporting.
SuiteReport run_suite(const SuiteConfig& cfg);

std::string report_text(const SuiteReport& r);
std::string report_json_string(const SuiteReport& r);

// Greedily replaces the failing program with its smallest well-typed
// closed subprogram that still fails, to a fixpoint.
TermPtr shrink_failure(Mode mode, const TermPtr& program,
                       const std::function<bool(const TermPtr&)>& still_fails);

std::size_t term_size(const TermPtr& t);

}  // namespace fctl
