#pragma once

// Core syntax shared by the four calculi: System F extended with abortive
// continuations (callcc/throw) or delimited continuations (shift/reset/throw),
// each evaluated call-by-value or call-by-name.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace fctl {

// ---------------------------------------------------------------- modes

enum class Family { Abortive, Delimited };
enum class Strategy { Cbv, Cbn };

struct Mode {
  Family family;
  Strategy strategy;
  bool operator==(const Mode&) const = default;
};

inline constexpr Mode kAbortiveCbv{Family::Abortive, Strategy::Cbv};
inline constexpr Mode kAbortiveCbn{Family::Abortive, Strategy::Cbn};
inline constexpr Mode kDelimitedCbv{Family::Delimited, Strategy::Cbv};
inline constexpr Mode kDelimitedCbn{Family::Delimited, Strategy::Cbn};
inline constexpr Mode kAllModes[] = {kAbortiveCbv, kAbortiveCbn,
                                     kDelimitedCbv, kDelimitedCbn};

std::string to_string(Mode m);
std::optional<Mode> mode_of_string(const std::string& family,
                                   const std::string& strategy);

// ---------------------------------------------------------------- types

struct Type;
using TypePtr = std::shared_ptr<const Type>;

// Suspended-computation type {S, T, U} used for function domains in the
// call-by-name delimited calculus.
struct CompTriple {
  TypePtr val, ans_in, ans_out;
};

// Function domains: a plain type everywhere except delimited call-by-name,
// where they are computation triples.
using ArgType = std::variant<TypePtr, CompTriple>;

struct TyVar {
  std::string name;
};
struct Arrow {
  TypePtr dom, cod;
};
struct Forall {
  std::string var;
  TypePtr body;
};
// S -> T @ [U, V]
struct ArrowD {
  ArgType dom;
  TypePtr cod, ans_in, ans_out;
};
// forall a. S @ [T, U]; the binder scopes over all three components.
struct ForallD {
  std::string var;
  TypePtr body, ans_in, ans_out;
};
// Unsolved answer-type variable introduced during delimited type inference.
struct MetaTy {
  std::uint64_t id;
};

struct Type {
  std::variant<TyVar, Arrow, Forall, ArrowD, ForallD, MetaTy> node;
};

TypePtr ty_var(std::string name);
TypePtr ty_arrow(TypePtr dom, TypePtr cod);
TypePtr ty_forall(std::string var, TypePtr body);
TypePtr ty_arrow_d(ArgType dom, TypePtr cod, TypePtr ans_in, TypePtr ans_out);
TypePtr ty_forall_d(std::string var, TypePtr body, TypePtr ans_in,
                    TypePtr ans_out);
TypePtr ty_meta(std::uint64_t id);

template <class T>
const T* as(const TypePtr& t) {
  return t ? std::get_if<T>(&t->node) : nullptr;
}

// Type of a continuation variable or reified context. `ans` is null in the
// abortive calculi (written "S cont") and present in the delimited ones
// (written "(S, T) cont").
struct ContextType {
  TypePtr hole;
  TypePtr ans;
};

// Type of a metacontext, written "not S".
struct MetacontextType {
  TypePtr hole;
};

// ---------------------------------------------------------------- terms

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Frame;

// Evaluation context as a frame list, innermost frame first.
struct Context {
  std::vector<Frame> frames;
};

// Metacontext: stack of contexts separated by reset, innermost first.
struct Metacontext {
  std::vector<Context> stack;
};

struct Var {
  std::string name;
};
struct Lam {
  std::string var;
  ArgType ann;
  TermPtr body;
};
struct App {
  TermPtr fn, arg;
};
struct TyLam {
  std::string var;
  TermPtr body;
};
struct TyApp {
  TermPtr fn;
  TypePtr ty;
};
struct Callcc {
  std::string k;
  ContextType ann;
  TermPtr body;
};
struct Shift {
  std::string k;
  ContextType ann;
  TermPtr body;
};
struct Reset {
  TermPtr body;
};
// throw k t. `result_ann` is the type the whole throw expression claims; it
// is present in the abortive calculi and absent in the delimited ones.
struct ThrowVar {
  std::string k;
  TypePtr result_ann;
  TermPtr arg;
};
// throw ^[..] t: a throw whose continuation has been reified to a context.
// Appears only at runtime (and in trace files), never in source programs.
struct ThrowCtx {
  Context ctx;
  TypePtr result_ann;
  TermPtr arg;
};

struct Term {
  std::variant<Var, Lam, App, TyLam, TyApp, Callcc, Shift, Reset, ThrowVar,
               ThrowCtx>
      node;
};

TermPtr mk_var(std::string name);
TermPtr mk_lam(std::string var, ArgType ann, TermPtr body);
TermPtr mk_app(TermPtr fn, TermPtr arg);
TermPtr mk_tylam(std::string var, TermPtr body);
TermPtr mk_tyapp(TermPtr fn, TypePtr ty);
TermPtr mk_callcc(std::string k, ContextType ann, TermPtr body);
TermPtr mk_shift(std::string k, ContextType ann, TermPtr body);
TermPtr mk_reset(TermPtr body);
TermPtr mk_throw_var(std::string k, TypePtr result_ann, TermPtr arg);
TermPtr mk_throw_ctx(Context ctx, TypePtr result_ann, TermPtr arg);

template <class T>
const T* as(const TermPtr& t) {
  return t ? std::get_if<T>(&t->node) : nullptr;
}

// ---------------------------------------------------------------- frames

// [] t
struct AppFrame {
  TermPtr arg;
};
// (fun ..) []; the function is syntactically a lambda.
struct FunFrame {
  TermPtr fn;
};
// [] [T]
struct TyAppFrame {
  TypePtr ty;
};
// throw ^[..] []
struct ThrowFrame {
  Context ctx;
  TypePtr result_ann;
};

struct Frame {
  std::variant<AppFrame, FunFrame, TyAppFrame, ThrowFrame> node;
};

template <class T>
const T* as(const Frame& f) {
  return std::get_if<T>(&f.node);
}

// ---------------------------------------------------------------- queries

// Values are lambdas and type lambdas in every mode.
bool is_value(const TermPtr& t);

// A term is plain if it contains no reified-context throw.
bool is_plain(const TermPtr& t);

struct FreeVars {
  std::set<std::string> term, cont, type;
  bool empty() const { return term.empty() && cont.empty() && type.empty(); }
};

FreeVars free_vars(const TermPtr& t);
void free_type_vars(const TypePtr& t, std::set<std::string>& out);
std::set<std::string> free_type_vars(const TypePtr& t);
bool is_closed(const TermPtr& t);

// Checks that a term uses only the constructors, annotations and context
// frames of the given mode (e.g. no shift in an abortive term, computation
// triples only in delimited call-by-name). Returns a description of the
// first violation, or nothing.
std::optional<std::string> mode_violation(Mode m, const TermPtr& t);
std::optional<std::string> mode_violation(Mode m, const Context& e);

// ---------------------------------------------------------------- fresh names

// Returns base with trailing digits stripped and a globally unique counter
// appended. Callers avoiding capture should retry while the result collides
// with names they care about.
std::string fresh_name(const std::string& base);
std::string fresh_name_avoiding(const std::string& base,
                                const std::set<std::string>& avoid);

// ---------------------------------------------------------------- substitution

TypePtr subst_type(const TypePtr& t, const std::string& a, const TypePtr& s);
ArgType subst_type(const ArgType& t, const std::string& a, const TypePtr& s);
TermPtr subst_term(const TermPtr& t, const std::string& x, const TermPtr& s);
TermPtr subst_type_in_term(const TermPtr& t, const std::string& a,
                           const TypePtr& s);
// Replaces throws to continuation variable k by throws to the reified
// context e; the result annotation recorded on each throw is kept.
TermPtr subst_cont(const TermPtr& t, const std::string& k, const Context& e);

// ---------------------------------------------------------------- alpha

bool alpha_eq(const TypePtr& a, const TypePtr& b);
bool alpha_eq(const ArgType& a, const ArgType& b);
bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const Context& a, const Context& b);
bool alpha_eq(const Metacontext& a, const Metacontext& b);
bool alpha_eq(const ContextType& a, const ContextType& b);

// Renumbers metavariables in order of first occurrence, so that judgments
// from different checker runs can be compared with alpha_eq.
TypePtr normalize_metas(const TypePtr& t);

}  // namespace fctl
