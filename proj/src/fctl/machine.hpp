#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fctl/reduction.hpp"
#include "fctl/syntax.hpp"

namespace fctl {

// Defunctionalized evaluators used as oracles against the reduction
// semantics. They count machine transitions, not reduction steps, so their
// default fuel is ten times the reduction default.
inline constexpr std::uint64_t kDefaultMachineFuel = 10 * kDefaultFuel;

struct MachineResult {
  Outcome outcome;
  TermPtr result;  // final value when normalized, last focus otherwise
  std::uint64_t transitions = 0;
  std::string stuck_reason;
};

struct MachineTraceEntry {
  // "eval", "continue", "continue-meta" or "done".
  std::string state;
  TermPtr focus;
  Context ctx;
  Metacontext meta;
};

MachineResult machine_eval(Mode mode, const TermPtr& program,
                           std::uint64_t fuel = kDefaultMachineFuel,
                           std::vector<MachineTraceEntry>* trace = nullptr);

}  // namespace fctl
