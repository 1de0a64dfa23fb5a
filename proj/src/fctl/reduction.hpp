#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fctl/syntax.hpp"

namespace fctl {

enum class Rule { BetaV, BetaN, BetaT, Callcc, ThrowV, ThrowN, Shift, Reset };
const char* rule_name(Rule r);

inline constexpr std::uint64_t kDefaultFuel = 100000;

// A split of a program into a focused subterm, its evaluation context, and
// (in the delimited calculi) the metacontext of enclosing resets.
struct Decomposition {
  // Position marks an enumerated split whose focus is neither a redex nor a
  // finished value; decompose() itself never returns one.
  enum class Kind { Redex, Value, ProgramValue, Position };
  Kind kind;
  Rule rule;  // meaningful only when kind == Redex
  TermPtr focus;
  Context ctx;
  Metacontext meta;  // always empty in the abortive calculi
};

struct StuckInfo {
  std::string reason;
  TermPtr at;
};

using DecomposeResult = std::variant<Decomposition, StuckInfo>;

TermPtr plug(TermPtr t, const Context& e);
TermPtr plug_meta(TermPtr t, const Metacontext& f);
// Pushes a context onto a metacontext (the context becomes innermost).
Metacontext push_meta(Context e, const Metacontext& f);
// Rebuilds the program a decomposition was taken from.
TermPtr reconstitute(Mode mode, const Decomposition& d);

// Syntactic equality (on the nose, no alpha).
bool exact_eq(const TermPtr& a, const TermPtr& b);
bool exact_eq(const Context& a, const Context& b);
bool exact_eq(const Metacontext& a, const Metacontext& b);
bool exact_eq(const TypePtr& a, const TypePtr& b);

// The reduction rule a term's head forms, independent of its context.
std::optional<Rule> redex_rule(Mode mode, const TermPtr& t);

// The canonical leftmost decomposition. Recomputed from the program root at
// every step; there is no incremental refocusing.
DecomposeResult decompose(Mode mode, const TermPtr& program);

// Every split of the program permitted by the evaluation-context grammar of
// the mode. Used to validate that exactly one split focuses a redex.
std::vector<Decomposition> enumerate_decompositions(Mode mode,
                                                    const TermPtr& program);

struct StepOk {
  Rule rule;
  TermPtr program;
  Decomposition decomp;
};
struct StepDone {
  Decomposition decomp;  // Value or ProgramValue
};
using StepResult = std::variant<StepOk, StepDone, StuckInfo>;

StepResult step(Mode mode, const TermPtr& program);

enum class Outcome { Normalized, FuelExhausted, Stuck };
// Labels used in traces: "value" / "program-value" / "fuel-exhausted" /
// "stuck".
std::string outcome_label(Outcome o, Mode mode);

struct EvalResult {
  Outcome outcome;
  // Final value payload when normalized (for a delimited program value
  // reset(v), the payload v); otherwise the last program.
  TermPtr result;
  TermPtr final_program;
  std::uint64_t steps = 0;
  std::string stuck_reason;
};

EvalResult evaluate(Mode mode, TermPtr program,
                    std::uint64_t fuel = kDefaultFuel);

struct TraceEntry {
  TermPtr program;
  std::optional<Decomposition> decomp;
  std::optional<Rule> rule;  // rule applied at this program; absent on last
};

struct TraceResult {
  std::vector<TraceEntry> entries;
  Outcome outcome;
  TermPtr result;
  TermPtr final_program;
  std::uint64_t steps = 0;
  std::string stuck_reason;
};

TraceResult trace(Mode mode, TermPtr program,
                  std::uint64_t fuel = kDefaultFuel);

}  // namespace fctl
