#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fctl/syntax.hpp"
#include "fctl/types_abortive.hpp"

namespace fctl {

// Judgment of the delimited calculi: under incoming answer type ans_in the
// term produces a value of type ty and final answer type ans_out.
struct Judgment {
  TypePtr ty, ans_in, ans_out;
};

// Environment: term variables (plain types call-by-value, computation
// triples call-by-name) and continuation variables k : (S, T) cont.
struct EnvD {
  std::map<std::string, ArgType> vars;
  std::map<std::string, ContextType> conts;
};

// First-order unification over answer-type metavariables, with an undo
// trail so generators can backtrack. No path compression: solutions are
// followed on every resolve, bindings are recorded in the trail and undone
// by truncation.
class Unifier {
 public:
  TypePtr fresh();
  bool is_meta(const TypePtr& t) const;
  TypePtr resolve(TypePtr t) const;  // follow solved metas at the root
  TypePtr zonk(const TypePtr& t) const;
  ArgType zonk(const ArgType& t) const;
  Judgment zonk(const Judgment& j) const;
  void unify(const TypePtr& a, const TypePtr& b);  // throws TypeError
  void unify(const ArgType& a, const ArgType& b);
  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark);

 private:
  void bind(std::uint64_t id, const TypePtr& t);
  bool occurs(std::uint64_t id, const TypePtr& t) const;
  std::vector<TypePtr> solutions_;
  std::vector<std::uint64_t> trail_;
};

// Derivation tree recorded during inference, for replay validation.
struct DerivNode {
  std::string rule;
  TermPtr term;
  Judgment j;
  std::vector<DerivNode> kids;
};

class DelimChecker {
 public:
  explicit DelimChecker(Mode mode);
  Judgment infer(const EnvD& env, const TermPtr& t, DerivNode* deriv = nullptr);
  // Context/metacontext types at a requested hole type, folded inner to
  // outer with unification.
  ContextType infer_context(const EnvD& env, const Context& e, TypePtr hole);
  MetacontextType infer_metacontext(const EnvD& env, const Metacontext& f,
                                    TypePtr hole);
  Unifier& unifier() { return uni_; }

 private:
  TypePtr fold_context(const EnvD& env, const Context& e, std::size_t i,
                       TypePtr hole);
  Mode mode_;
  Unifier uni_;
};

// One-shot wrappers; results are zonked.
Judgment infer_term_delim(const EnvD& env, Mode mode, const TermPtr& t,
                          DerivNode* deriv = nullptr);
ContextType infer_context_delim(const EnvD& env, Mode mode, const Context& e,
                                const TypePtr& hole);
MetacontextType infer_metacontext(const EnvD& env, Mode mode,
                                  const Metacontext& f, const TypePtr& hole);

// Renumbers metavariables consistently across the three components.
Judgment normalize_metas(const Judgment& j);

// Source programs: closed, plain, reset-wrapped. The result may contain
// residual answer metavariables (answer-polymorphic programs), reported
// after canonical renumbering.
TypePtr check_program_delim(Mode mode, const TermPtr& t);

// Replaces every residual metavariable by a fresh rigid type variable, so a
// later run can check other programs against this type by unification.
TypePtr skolemize(const TypePtr& t);

// Intermediate programs: closed and reset-wrapped (reified throws allowed),
// checked at the given program type by unifying the judgment with
// (want, want, want). Throws on failure.
void check_runtime_delim_at(Mode mode, const TermPtr& t, const TypePtr& want);

}  // namespace fctl
