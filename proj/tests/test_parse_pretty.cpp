#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fctl/generate.hpp"
#include "fctl/parse.hpp"
#include "fctl/pretty.hpp"
#include "fctl/syntax.hpp"

using namespace fctl;

namespace {

TermPtr rt(const std::string& src, Mode mode, bool reified = false) {
  return parse_term(src, mode, reified);
}

void check_roundtrip(const TermPtr& t, Mode mode, bool reified = false) {
  std::string s = pretty(t);
  CAPTURE(s);
  TermPtr back = parse_term(s, mode, reified);
  CHECK(alpha_eq(t, back));
}

}  // namespace

// ---------------------------------------------------------------- types

TEST_CASE("arrow is right associative") {
  TypePtr t = parse_type_string("a -> b -> c", kAbortiveCbv);
  auto* ar = as<Arrow>(t);
  REQUIRE(ar);
  CHECK(as<TyVar>(ar->dom));
  CHECK(as<Arrow>(ar->cod));
}

TEST_CASE("parenthesized domain binds the other way") {
  TypePtr t = parse_type_string("(a -> b) -> c", kAbortiveCbv);
  auto* ar = as<Arrow>(t);
  REQUIRE(ar);
  CHECK(as<Arrow>(ar->dom));
  CHECK(as<TyVar>(ar->cod));
}

TEST_CASE("forall scopes to the right") {
  TypePtr t = parse_type_string("forall a. a -> a", kAbortiveCbv);
  auto* f = as<Forall>(t);
  REQUIRE(f);
  CHECK(as<Arrow>(f->body));
}

TEST_CASE("delimited arrow carries answer types") {
  TypePtr t = parse_type_string("a -> b @ [c, d]", kDelimitedCbv);
  auto* ad = as<ArrowD>(t);
  REQUIRE(ad);
  CHECK(alpha_eq(std::get<TypePtr>(ad->dom), ty_var("a")));
  CHECK(alpha_eq(ad->cod, ty_var("b")));
  CHECK(alpha_eq(ad->ans_in, ty_var("c")));
  CHECK(alpha_eq(ad->ans_out, ty_var("d")));
}

TEST_CASE("delimited forall carries answer types and binds all three") {
  TypePtr t = parse_type_string("forall a. a -> a @ [a, a] @ [a, a]",
                                kDelimitedCbv);
  auto* fd = as<ForallD>(t);
  REQUIRE(fd);
  CHECK(as<ArrowD>(fd->body));
  CHECK(alpha_eq(fd->ans_in, ty_var("a")));
  // Alpha: renaming the binder must rename the answer slots too.
  TypePtr u = parse_type_string("forall z. z -> z @ [z, z] @ [z, z]",
                                kDelimitedCbv);
  CHECK(alpha_eq(t, u));
}

TEST_CASE("triple domains parse in delimited call-by-name") {
  TypePtr t = parse_type_string("{a, b, c} -> a @ [d, d]", kDelimitedCbn);
  auto* ad = as<ArrowD>(t);
  REQUIRE(ad);
  auto* tr = std::get_if<CompTriple>(&ad->dom);
  REQUIRE(tr);
  CHECK(alpha_eq(tr->val, ty_var("a")));
  CHECK(alpha_eq(tr->ans_in, ty_var("b")));
  CHECK(alpha_eq(tr->ans_out, ty_var("c")));
}

TEST_CASE("type round trips stay alpha equal") {
  for (const char* s : {
           "forall a. a -> a",
           "forall a. a -> a -> a",
           "(forall a. a -> a) -> forall b. b -> b",
           "forall a. forall b. (a -> b) -> a -> b",
       }) {
    TypePtr t = parse_type_string(s, kAbortiveCbv);
    CHECK(alpha_eq(t, parse_type_string(pretty(t), kAbortiveCbv)));
  }
  for (const char* s : {
           "forall a. (a -> a @ [a, a]) @ [a, a]",
           "(forall a. (a -> a @ [a, a]) @ [a, a]) -> forall a. (a -> a @ "
           "[a, a]) @ [a, a] @ [b, b]",
       }) {
    TypePtr t = parse_type_string(s, kDelimitedCbv);
    CHECK(alpha_eq(t, parse_type_string(pretty(t), kDelimitedCbv)));
  }
  for (const char* s : {
           "{a, b, b} -> a @ [c, c]",
           "forall a. ({a, a, a} -> a @ [a, a]) @ [a, a]",
       }) {
    TypePtr t = parse_type_string(s, kDelimitedCbn);
    CHECK(alpha_eq(t, parse_type_string(pretty(t), kDelimitedCbn)));
  }
}

// ---------------------------------------------------------------- terms

TEST_CASE("application is left associative") {
  TermPtr t = rt("fun (f : a -> a -> a) -> fun (x : a) -> f x x",
                 kAbortiveCbv);
  auto* l1 = as<Lam>(t);
  REQUIRE(l1);
  auto* l2 = as<Lam>(l1->body);
  REQUIRE(l2);
  auto* outer = as<App>(l2->body);
  REQUIRE(outer);
  CHECK(as<App>(outer->fn));
  CHECK(as<Var>(outer->arg));
}

TEST_CASE("type application uses brackets") {
  TermPtr t = rt("fun (f : forall a. a -> a) -> f [b]", kAbortiveCbv);
  auto* l = as<Lam>(t);
  REQUIRE(l);
  auto* ta = as<TyApp>(l->body);
  REQUIRE(ta);
  CHECK(alpha_eq(ta->ty, ty_var("b")));
}

TEST_CASE("callcc parses with its continuation annotation") {
  TermPtr t = rt("callcc (k : a cont) -> fun (x : a) -> throw[a] k x",
                 kAbortiveCbv);
  auto* c = as<Callcc>(t);
  REQUIRE(c);
  CHECK(c->k == "k");
  CHECK(alpha_eq(c->ann.hole, ty_var("a")));
  CHECK(c->ann.ans == nullptr);
}

TEST_CASE("abortive throw requires its result annotation") {
  CHECK_THROWS_AS(rt("callcc (k : a cont) -> fun (x : a) -> throw k x",
                     kAbortiveCbv),
                  ParseError);
}

TEST_CASE("delimited throw rejects a result annotation") {
  CHECK_THROWS_AS(
      rt("shift (k : (a, b) cont) -> fun (x : a) -> throw[b] k x",
         kDelimitedCbv),
      ParseError);
}

TEST_CASE("both continuation type spellings parse to the same type") {
  TermPtr pair = rt("shift (k : (a, b) cont) -> throw k x", kDelimitedCbv);
  TermPtr infix = rt("shift (k : a cont b) -> throw k x", kDelimitedCbv);
  CHECK(alpha_eq(pair, infix));
}

TEST_CASE("delimited continuation annotations require an answer type") {
  CHECK_THROWS_AS(rt("shift (k : a cont) -> x", kDelimitedCbv), ParseError);
}

TEST_CASE("reset takes an atom") {
  TermPtr t = rt("reset (f x)", kDelimitedCbv);
  auto* r = as<Reset>(t);
  REQUIRE(r);
  CHECK(as<App>(r->body));
}

TEST_CASE("reified contexts parse only when allowed") {
  std::string src = "throw[a] ^[ [] x ] y";
  CHECK_THROWS_AS(rt(src, kAbortiveCbv), ParseError);
  TermPtr t = rt(src, kAbortiveCbv, true);
  auto* tc = as<ThrowCtx>(t);
  REQUIRE(tc);
  REQUIRE(tc->ctx.frames.size() == 1);
  CHECK(as<AppFrame>(tc->ctx.frames[0]));
}

TEST_CASE("reified context frames read innermost first") {
  TermPtr t = rt("throw[a] ^[ [] x; [] [b]; (fun (y : a) -> y) [] ] z",
                 kAbortiveCbv, true);
  auto* tc = as<ThrowCtx>(t);
  REQUIRE(tc);
  REQUIRE(tc->ctx.frames.size() == 3);
  CHECK(as<AppFrame>(tc->ctx.frames[0]));
  CHECK(as<TyAppFrame>(tc->ctx.frames[1]));
  CHECK(as<FunFrame>(tc->ctx.frames[2]));
}

TEST_CASE("empty reified context") {
  TermPtr t = rt("throw[a] ^[] x", kAbortiveCbv, true);
  auto* tc = as<ThrowCtx>(t);
  REQUIRE(tc);
  CHECK(tc->ctx.frames.empty());
}

// ---------------------------------------------------------------- programs

TEST_CASE("program header fixes the mode") {
  ParsedProgram p =
      parse_program("#mode abortive cbn\nfun (x : a) -> x", std::nullopt);
  CHECK(p.mode == kAbortiveCbn);
  CHECK(as<Lam>(p.term));
}

TEST_CASE("override beats the header") {
  ParsedProgram p = parse_program("#mode abortive cbn\nfun (x : a) -> x",
                                  kAbortiveCbv);
  CHECK(p.mode == kAbortiveCbv);
}

TEST_CASE("a program needs a mode from somewhere") {
  CHECK_THROWS_AS(parse_program("fun (x : a) -> x", std::nullopt), ParseError);
}

TEST_CASE("comments and blank lines are skipped") {
  ParsedProgram p = parse_program(
      "#mode abortive cbv\n\n-- the identity, spelled out\nfun (x : a) -> x\n",
      std::nullopt);
  CHECK(as<Lam>(p.term));
}

TEST_CASE("a comment banner may precede the header") {
  ParsedProgram p = parse_program(
      "-- a file-level banner\n-- over two lines\n\n"
      "#mode delimited cbn\nfun (x : {a, a, a}) -> x\n",
      std::nullopt);
  CHECK(p.mode == kDelimitedCbn);
  CHECK(as<Lam>(p.term));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_term("fun (x : a) ->", kAbortiveCbv);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line >= 1);
    CHECK(e.col >= 1);
  }
}

TEST_CASE("trailing garbage is rejected") {
  CHECK_THROWS_AS(rt("x y )", kAbortiveCbv), ParseError);
}

// ---------------------------------------------------------------- round trips

TEST_CASE("hand written terms round trip in every mode") {
  struct Case {
    const char* src;
    Mode mode;
  };
  const Case cases[] = {
      {"fun (x : forall a. a -> a) -> x [b -> b]", kAbortiveCbv},
      {"callcc (k : a cont) -> throw[a] k (callcc (j : a cont) -> x)",
       kAbortiveCbv},
      {"tfun a -> fun (x : a) -> fun (y : a) -> y", kAbortiveCbn},
      {"reset (shift (k : (a, b) cont) -> throw k x)", kDelimitedCbv},
      {"fun (x : {a, b, b}) -> x", kDelimitedCbn},
      {"reset (reset (fun (x : a -> a @ [b, b]) -> x))", kDelimitedCbv},
  };
  for (const auto& c : cases) {
    TermPtr t = rt(c.src, c.mode);
    check_roundtrip(t, c.mode);
  }
}

TEST_CASE("runtime terms with reified contexts round trip") {
  const char* srcs[] = {
      "throw[a] ^[] x",
      "throw[a] ^[ [] x; (fun (y : b) -> y) []; [] [c] ] z",
      "throw ^[ [] x ] y",
  };
  for (const char* s : srcs) {
    Mode mode = s[5] == '[' ? kAbortiveCbv : kDelimitedCbv;
    TermPtr t = rt(s, mode, true);
    check_roundtrip(t, mode, true);
  }
}

TEST_CASE("generated corpora round trip in every mode") {
  for (Mode mode : kAllModes) {
    GenConfig cfg;
    cfg.mode = mode;
    cfg.seed = 7;
    for (std::size_t i = 0; i < 200; ++i) {
      TermPtr t = generate_program(cfg, i);
      std::string s = pretty(t);
      CAPTURE(to_string(mode));
      CAPTURE(s);
      TermPtr back = parse_term(s, mode);
      CHECK(alpha_eq(t, back));
    }
  }
}

TEST_CASE("printer emits no mode specific sugar that fails to reparse") {
  // Continuation types print with the pair spelling; make sure a printed
  // shift annotation survives.
  TermPtr t = rt("reset (shift (k : (a, a) cont) -> throw k (shift (j : (a, "
                 "a) cont) -> throw j x))",
                 kDelimitedCbv);
  check_roundtrip(t, kDelimitedCbv);
}
