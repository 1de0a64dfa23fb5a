// The C interface, exercised through the public header and the shared
// library alone.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <string>

#include "fctl/fctl.h"

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { fctl_free_string(p); }
  std::string get() const { return p ? p : ""; }
};

struct Prog {
  fctl_program* p = nullptr;
  ~Prog() { fctl_program_free(p); }
};

const char* kCallccSrc =
    "#mode abortive cbv\n"
    "callcc (k : (forall a. a -> a) cont) ->\n"
    "  throw[forall a. a -> a] k (tfun a -> fun (x : a) -> x)\n";

const char* kShiftSrc =
    "#mode delimited cbv\n"
    "reset (shift (k : (forall a. (a -> a @ [a, a]) @ [a, a],\n"
    "                   forall a. (a -> a @ [a, a]) @ [a, a]) cont) ->\n"
    "  throw k (tfun b -> fun (x : b) -> x))\n";

}  // namespace

TEST_CASE("version and string ownership") {
  REQUIRE(fctl_version() != nullptr);
  CHECK(std::string(fctl_version()) == "0.1.0");
  fctl_free_string(nullptr);
}

TEST_CASE("parse, mode report, render round trip") {
  Prog prog;
  Str err;
  REQUIRE(fctl_parse(kCallccSrc, nullptr, nullptr, 0, &prog.p, &err.p) ==
          FCTL_OK);
  REQUIRE(prog.p != nullptr);

  Str family, strategy;
  CHECK(fctl_program_mode(prog.p, &family.p, &strategy.p) == FCTL_OK);
  CHECK(family.get() == "abortive");
  CHECK(strategy.get() == "cbv");

  Str text;
  REQUIRE(fctl_render(prog.p, &text.p) == FCTL_OK);
  Prog again;
  Str err2;
  REQUIRE(fctl_parse(text.get().c_str(), "abortive", "cbv", 0, &again.p,
                     &err2.p) == FCTL_OK);
  Str text2;
  REQUIRE(fctl_render(again.p, &text2.p) == FCTL_OK);
  CHECK(text.get() == text2.get());
}

TEST_CASE("explicit mode arguments override the header") {
  Prog prog;
  Str err;
  REQUIRE(fctl_parse(kCallccSrc, "abortive", "cbn", 0, &prog.p, &err.p) ==
          FCTL_OK);
  Str family, strategy;
  CHECK(fctl_program_mode(prog.p, &family.p, &strategy.p) == FCTL_OK);
  CHECK(strategy.get() == "cbn");
}

TEST_CASE("argument validation") {
  Prog prog;
  Str err;
  CHECK(fctl_parse(nullptr, nullptr, nullptr, 0, &prog.p, &err.p) ==
        FCTL_ERR_INVALID);
  Str err2;
  Prog p2;
  CHECK(fctl_parse("fun", "abortive", nullptr, 0, &p2.p, &err2.p) ==
        FCTL_ERR_INVALID);
  CHECK(err2.get() == "family and strategy must be given together");
  Str err3;
  Prog p3;
  CHECK(fctl_parse("fun", "total", "cbv", 0, &p3.p, &err3.p) ==
        FCTL_ERR_INVALID);
  CHECK(err3.get().find("unknown mode") == 0);
  CHECK(fctl_render(nullptr, nullptr) == FCTL_ERR_INVALID);
}

TEST_CASE("parse errors carry positions") {
  Prog prog;
  Str err;
  int rc = fctl_parse("#mode abortive cbv\nfun (x :", nullptr, nullptr, 0,
                      &prog.p, &err.p);
  CHECK(rc == FCTL_ERR_INPUT);
  CHECK(prog.p == nullptr);
  CHECK(!err.get().empty());
}

TEST_CASE("typechecking reports the program type") {
  Prog prog;
  Str err;
  REQUIRE(fctl_parse(kCallccSrc, nullptr, nullptr, 0, &prog.p, &err.p) ==
          FCTL_OK);
  Str ty;
  Str cerr;
  REQUIRE(fctl_check(prog.p, &ty.p, &cerr.p) == FCTL_OK);
  CHECK(ty.get() == "forall a. a -> a");

  Prog bad;
  Str perr;
  REQUIRE(fctl_parse("#mode abortive cbv\nx", nullptr, nullptr, 0, &bad.p,
                     &perr.p) == FCTL_OK);
  Str ty2, cerr2;
  CHECK(fctl_check(bad.p, &ty2.p, &cerr2.p) == FCTL_ERR_INPUT);
  CHECK(!cerr2.get().empty());
}

TEST_CASE("evaluation with both engines agrees") {
  struct Row {
    const char* src;
    const char* result;
  };
  for (Row row : {Row{kCallccSrc, "tfun a -> fun (x : a) -> x"},
                  Row{kShiftSrc, "tfun b -> fun (x : b) -> x"}}) {
    Prog prog;
    Str err;
    REQUIRE(fctl_parse(row.src, nullptr, nullptr, 0, &prog.p, &err.p) ==
            FCTL_OK);
    Str red, rerr, mac, merr;
    REQUIRE(fctl_eval(prog.p, 0, &red.p, &rerr.p) == FCTL_OK);
    REQUIRE(fctl_machine_eval(prog.p, 0, &mac.p, &merr.p) == FCTL_OK);
    CHECK(red.get() == mac.get());
    CHECK(red.get() == row.result);
  }
}

TEST_CASE("stepping yields intermediate programs") {
  Prog prog;
  Str err;
  REQUIRE(fctl_parse(kCallccSrc, nullptr, nullptr, 0, &prog.p, &err.p) ==
          FCTL_OK);
  Prog one;
  Str serr;
  REQUIRE(fctl_step(prog.p, 1, &one.p, &serr.p) == FCTL_OK);
  Str text;
  REQUIRE(fctl_render(one.p, &text.p) == FCTL_OK);
  CHECK(text.get().find("throw") == 0);

  // Stepping past the end stops at the value.
  Prog all;
  Str serr2;
  REQUIRE(fctl_step(prog.p, 99, &all.p, &serr2.p) == FCTL_OK);
  Str vtext;
  REQUIRE(fctl_render(all.p, &vtext.p) == FCTL_OK);
  CHECK(vtext.get() == "tfun a -> fun (x : a) -> x");
}

TEST_CASE("traces arrive as well-formed JSON") {
  Prog prog;
  Str err;
  REQUIRE(fctl_parse(kShiftSrc, nullptr, nullptr, 0, &prog.p, &err.p) ==
          FCTL_OK);
  Str tj;
  REQUIRE(fctl_trace(prog.p, 0, &tj.p) == FCTL_OK);
  nlohmann::json trace = nlohmann::json::parse(tj.get());
  REQUIRE(trace.is_array());
  REQUIRE(trace.size() == 4);
  CHECK(trace[0]["rule"] == "shift");
  CHECK(trace[1]["rule"] == "throw_v");
  CHECK(trace[2]["rule"] == "reset");
  CHECK(trace[3]["outcome"] == "program-value");
  CHECK(trace[3]["result"] == "tfun b -> fun (x : b) -> x");

  Str mj;
  REQUIRE(fctl_machine_trace(prog.p, 0, &mj.p) == FCTL_OK);
  nlohmann::json mtrace = nlohmann::json::parse(mj.get());
  REQUIRE(mtrace.is_array());
  for (const auto& rec : mtrace) CHECK(rec["engine"] == "machine");
}

TEST_CASE("decomposition JSON covers canonical and exhaustive splits") {
  Prog prog;
  Str err;
  const char* app =
      "#mode abortive cbv\n"
      "(fun (x : forall a. a -> a) -> x) (tfun a -> fun (x : a) -> x)\n";
  REQUIRE(fctl_parse(app, nullptr, nullptr, 0, &prog.p, &err.p) == FCTL_OK);
  Str one;
  REQUIRE(fctl_decompose(prog.p, 0, &one.p) == FCTL_OK);
  nlohmann::json canonical = nlohmann::json::parse(one.get());
  CHECK(canonical["kind"] == "redex");
  CHECK(canonical["rule"] == "beta_v");

  Str all;
  REQUIRE(fctl_decompose(prog.p, 1, &all.p) == FCTL_OK);
  nlohmann::json splits = nlohmann::json::parse(all.get());
  REQUIRE(splits.is_array());
  CHECK(splits.size() == 3);
}

TEST_CASE("outcome statuses distinguish input, stuck and fuel errors") {
  // Evaluation typechecks first, so an ill-typed loop is an input error.
  Prog omega;
  Str perr;
  const char* osrc =
      "#mode abortive cbv\n"
      "(fun (x : forall a. a -> a) -> x x) (fun (x : forall a. a -> a) -> x x)";
  REQUIRE(fctl_parse(osrc, nullptr, nullptr, 0, &omega.p, &perr.p) == FCTL_OK);
  Str oout, oerr;
  CHECK(fctl_eval(omega.p, 10, &oout.p, &oerr.p) == FCTL_ERR_INPUT);

  // Decomposition takes any program and reports where it jams.
  Prog freevar;
  Str ferr;
  REQUIRE(fctl_parse("#mode abortive cbv\nx", nullptr, nullptr, 0, &freevar.p,
                     &ferr.p) == FCTL_OK);
  Str dj;
  CHECK(fctl_decompose(freevar.p, 0, &dj.p) == FCTL_ERR_STUCK);
  nlohmann::json j = nlohmann::json::parse(dj.get());
  CHECK(j["stuck"] == "free variable x");
  CHECK(j["at"] == "x");

  // A well-typed two-step run exhausts a one-step budget.
  Prog two;
  Str terr;
  REQUIRE(fctl_parse(kCallccSrc, nullptr, nullptr, 0, &two.p, &terr.p) ==
          FCTL_OK);
  Str tout, touterr;
  CHECK(fctl_eval(two.p, 1, &tout.p, &touterr.p) == FCTL_ERR_FUEL);
}

TEST_CASE("the property suite runs through the C interface") {
  Str report, err;
  REQUIRE(fctl_fuzz("delimited", "cbv", 7, 40, 0, 1, &report.p, &err.p) ==
          FCTL_OK);
  nlohmann::json j = nlohmann::json::parse(report.get());
  CHECK(j["ok"] == true);
  CHECK(j["programs"] == 40);

  Str report2, err2;
  REQUIRE(fctl_fuzz("abortive", "cbn", 7, 40, 0, 0, &report2.p, &err2.p) ==
          FCTL_OK);
  CHECK(report2.get().find("PASS") != std::string::npos);

  Str report3, err3;
  CHECK(fctl_fuzz(nullptr, nullptr, 7, 10, 0, 0, &report3.p, &err3.p) ==
        FCTL_ERR_INVALID);
  CHECK(err3.get() == "fuzz requires an explicit mode");
}
