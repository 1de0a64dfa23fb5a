#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "fctl/syntax.hpp"

namespace fctl {

enum class TypeErrorKind {
  UnboundVar,
  Mismatch,
  NotArrow,
  NotForall,
  FtvEscape,
  ModeViolation,
  OpenTerm,
  NotPlain,
  OccursCheck,
  Ambiguous,
};
const char* to_string(TypeErrorKind k);

struct TypeError : std::runtime_error {
  TypeErrorKind kind;
  TypeError(TypeErrorKind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
};

// Typing environment for the abortive calculi: term variables and
// continuation variables (k : S cont, keyed to the hole type S).
struct EnvA {
  std::map<std::string, TypePtr> vars;
  std::map<std::string, TypePtr> conts;
};

// Infers the type of a term. Reified-context throws are typed by checking
// the captured context in the empty environment at the thrown term's type;
// when collect is non-null the answer type of every reified context
// encountered (also inside captured contexts) is appended to it.
TypePtr infer_term(const EnvA& env, Mode mode, const TermPtr& t,
                   std::vector<TypePtr>* collect = nullptr);

// The type a context makes of its hole: types plug(x, e) for a fresh x of
// type hole in the empty environment. Rejects contexts with free variables.
TypePtr answer_type(Mode mode, const Context& e, const TypePtr& hole);

// Derives e : S cont from a requested answer type, walking frames from the
// outside in. At type-application frames the hole type is reconstructed by
// abstracting every occurrence of the applied type (maximal anti-substitution).
ContextType infer_context(const EnvA& env, Mode mode, const Context& e,
                          const TypePtr& answer);

// Source programs: closed, plain, well-typed.
TypePtr check_program(Mode mode, const TermPtr& t);

// Intermediate programs of a reduction sequence: closed and well-typed, but
// reified-context throws are permitted.
TypePtr check_runtime(Mode mode, const TermPtr& t,
                      std::vector<TypePtr>* reified_answers = nullptr);

}  // namespace fctl
