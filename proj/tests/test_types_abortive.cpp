#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fctl/parse.hpp"
#include "fctl/pretty.hpp"
#include "fctl/reduction.hpp"
#include "fctl/syntax.hpp"
#include "fctl/types_abortive.hpp"

using namespace fctl;

namespace {

TypePtr ty(const std::string& s) { return parse_type_string(s, kAbortiveCbv); }

TermPtr pt(const std::string& s, bool reified = false) {
  return parse_term(s, kAbortiveCbv, reified);
}

TypePtr infer0(const std::string& s, Mode mode = kAbortiveCbv) {
  return infer_term(EnvA{}, mode, parse_term(s, mode));
}

TypeErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const TypeError& e) {
    return e.kind;
  }
  throw std::runtime_error("expected a type error");
}

const char* kIdU = "tfun a -> fun (x : a) -> x";

}  // namespace

// ---------------------------------------------------------------- rules

TEST_CASE("variables read their type from the environment") {
  EnvA env;
  env.vars["x"] = ty("b -> b");
  CHECK(alpha_eq(infer_term(env, kAbortiveCbv, pt("x")), ty("b -> b")));
}

TEST_CASE("lambda and application") {
  CHECK(alpha_eq(infer0("fun (x : b) -> x"), ty("b -> b")));
  EnvA env;
  env.vars["f"] = ty("b -> c");
  env.vars["y"] = ty("b");
  CHECK(alpha_eq(infer_term(env, kAbortiveCbv, pt("f y")), ty("c")));
}

TEST_CASE("type abstraction and application") {
  CHECK(alpha_eq(infer0(kIdU), ty("forall a. a -> a")));
  CHECK(alpha_eq(infer0(std::string("(") + kIdU + ") [c -> c]"),
                 ty("(c -> c) -> c -> c")));
}

TEST_CASE("callcc binds its continuation at the body type") {
  CHECK(alpha_eq(
      infer0("callcc (k : (forall a. a -> a) cont) -> throw[forall a. a -> "
             "a] k (tfun a -> fun (x : a) -> x)"),
      ty("forall a. a -> a")));
}

TEST_CASE("throw claims any result type") {
  // The throw aborts, so its annotation is free; here it claims the
  // function type the surrounding application needs.
  CHECK(alpha_eq(
      infer0("callcc (k : (forall a. a -> a) cont) -> (throw[(forall a. a "
             "-> a) -> forall a. a -> a] k (tfun a -> fun (x : a) -> x)) "
             "(tfun b -> fun (y : b) -> y)"),
      ty("forall a. a -> a")));
}

TEST_CASE("typing is the same under call-by-name") {
  for (const char* s :
       {"fun (x : b) -> x", kIdU,
        "callcc (k : b cont) -> callcc (j : b cont) -> throw[b] j (throw[b] "
        "k x)"}) {
    EnvA env;
    env.vars["x"] = ty("b");
    TermPtr t = pt(s);
    CHECK(alpha_eq(infer_term(env, kAbortiveCbv, t),
                   infer_term(env, kAbortiveCbn, t)));
  }
}

// ---------------------------------------------------------------- negatives

TEST_CASE("error taxonomy") {
  CHECK(kind_of([] { infer0("x"); }) == TypeErrorKind::UnboundVar);
  CHECK(kind_of([] { infer0("throw[b] k (fun (x : b) -> x)"); }) ==
        TypeErrorKind::UnboundVar);
  CHECK(kind_of([] {
          infer0("(fun (x : forall a. a -> a) -> x) (tfun a -> fun (y : a) "
                 "-> fun (z : a) -> y)");
        }) == TypeErrorKind::Mismatch);
  CHECK(kind_of([] {
          infer0("(tfun a -> fun (x : a) -> x) (tfun b -> fun (y : b) -> y)");
        }) == TypeErrorKind::NotArrow);
  CHECK(kind_of([] { infer0("(fun (x : b) -> x) [c]"); }) ==
        TypeErrorKind::NotForall);
  CHECK(kind_of([] { check_program(kAbortiveCbv, pt("x")); }) ==
        TypeErrorKind::OpenTerm);
  CHECK(kind_of([] {
          check_program(kAbortiveCbv,
                        pt("throw[b] ^[] (fun (x : b) -> x)", true));
        }) == TypeErrorKind::NotPlain);
}

TEST_CASE("type variables may not escape their binder") {
  // The bound type variable would leak into the type of x.
  CHECK(kind_of([] { infer0("fun (x : b) -> tfun b -> x"); }) ==
        TypeErrorKind::FtvEscape);
  // Same through a continuation binding.
  CHECK(kind_of([] {
          infer0("callcc (k : b cont) -> tfun b -> throw[b] k x");
        }) == TypeErrorKind::FtvEscape);
  // Renamed binder is fine.
  CHECK(alpha_eq(infer0("fun (x : b) -> tfun c -> x"),
                 ty("b -> forall c. b")));
}

TEST_CASE("delimited constructs are mode violations here") {
  CHECK(kind_of([] {
          infer_term(EnvA{}, kAbortiveCbv,
                     parse_term("reset (fun (x : b) -> x)", kDelimitedCbv));
        }) == TypeErrorKind::ModeViolation);
  CHECK(kind_of([] {
          infer_term(EnvA{}, kAbortiveCbv,
                     parse_term("shift (k : (b, b) cont) -> throw k x",
                                kDelimitedCbv));
        }) == TypeErrorKind::ModeViolation);
}

// ---------------------------------------------------------------- contexts

TEST_CASE("answer type is the type of the plugged context") {
  // [] applied to the identity: hole (U -> U), answer U.
  Context e{{Frame{AppFrame{pt(kIdU)}}}};
  TypePtr u = ty("forall a. a -> a");
  CHECK(alpha_eq(answer_type(kAbortiveCbv, e, ty_arrow(u, u)), u));
}

TEST_CASE("infer context inverts answer type on frame stacks") {
  TypePtr u = ty("forall a. a -> a");
  std::vector<Context> cases = {
      Context{},
      Context{{Frame{AppFrame{pt(kIdU)}}}},
      Context{{Frame{TyAppFrame{u}}}},
      Context{{Frame{AppFrame{pt(kIdU)}}, Frame{TyAppFrame{u}}}},
      Context{{Frame{FunFrame{pt("fun (x : forall a. a -> a) -> x")}}}},
  };
  for (const Context& e : cases) {
    CAPTURE(pretty(e));
    ContextType ct = infer_context(EnvA{}, kAbortiveCbv, e, u);
    // Independent read back: plugging a variable of the derived hole type
    // must reproduce the requested answer type.
    CHECK(alpha_eq(answer_type(kAbortiveCbv, e, ct.hole), u));
  }
}

TEST_CASE("type application frames abstract the answer maximally") {
  // Hole [] [U] with answer U -> U comes from hole type forall a. a -> a:
  // every occurrence of U in the answer is abstracted.
  TypePtr u = ty("forall a. a -> a");
  Context e{{Frame{TyAppFrame{u}}}};
  ContextType ct = infer_context(EnvA{}, kAbortiveCbv, e, ty_arrow(u, u));
  CHECK(alpha_eq(ct.hole, ty("forall c. c -> c")));
}

TEST_CASE("reified context throws type their context in the empty env") {
  // The captured context mentions a variable, so even a binding for it in
  // the ambient environment must not rescue the program.
  EnvA env;
  env.vars["y"] = ty("forall a. a -> a");
  TermPtr t = pt("throw[b] ^[ [] y ] (fun (x : forall a. a -> a) -> x)", true);
  CHECK(kind_of([&] { infer_term(env, kAbortiveCbv, t); }) ==
        TypeErrorKind::UnboundVar);
}

TEST_CASE("check runtime collects the answer types of reified contexts") {
  std::vector<TypePtr> answers;
  TypePtr u = ty("forall a. a -> a");
  // The outer context answers at U, the inner empty context at U -> U.
  TermPtr t = pt(
      "throw[forall a. a -> a] ^[ [] (tfun a -> fun (x : a) -> x) ] (fun (y "
      ": forall a. a -> a) -> throw[forall a. a -> a] ^[] (fun (z : forall "
      "a. a -> a) -> z))",
      true);
  check_runtime(kAbortiveCbv, t, &answers);
  REQUIRE(answers.size() == 2);
  bool seen_u = false, seen_uu = false;
  for (const auto& a : answers) {
    seen_u = seen_u || alpha_eq(a, u);
    seen_uu = seen_uu || alpha_eq(a, ty_arrow(u, u));
  }
  CHECK(seen_u);
  CHECK(seen_uu);
}

// ---------------------------------------------------------------- programs

TEST_CASE("check program accepts the golden sources") {
  TypePtr u = ty("forall a. a -> a");
  CHECK(alpha_eq(check_program(kAbortiveCbv,
                               pt("callcc (k : (forall a. a -> a) cont) -> "
                                  "throw[forall a. a -> a] k (tfun a -> fun "
                                  "(x : a) -> x)")),
                 u));
  CHECK(alpha_eq(
      check_program(kAbortiveCbv,
                    pt(std::string("((") + kIdU + ") [forall a. a -> a]) (" +
                       kIdU + ")")),
      u));
}

TEST_CASE("preservation along a hand trace") {
  Mode m = kAbortiveCbv;
  TermPtr p = pt("callcc (k : (forall a. a -> a) cont) -> throw[forall a. a "
                 "-> a] k (tfun a -> fun (x : a) -> x)");
  TypePtr s0 = check_program(m, p);
  for (;;) {
    StepResult r = step(m, p);
    auto* ok = std::get_if<StepOk>(&r);
    if (!ok) break;
    p = ok->program;
    std::vector<TypePtr> answers;
    CHECK(alpha_eq(check_runtime(m, p, &answers), s0));
    for (const auto& a : answers) CHECK(alpha_eq(a, s0));
  }
}
