// Abstract-machine evaluators checked against the reduction semantics.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "fctl/generate.hpp"
#include "fctl/machine.hpp"
#include "fctl/parse.hpp"
#include "fctl/reduction.hpp"
#include "fctl/suite.hpp"
#include "fctl/syntax.hpp"

using namespace fctl;

namespace {

TermPtr pt(Mode mode, const std::string& src) {
  return parse_term(src, mode);
}

const char* kU = "forall a. a -> a";
const char* kIdU = "tfun a -> fun (x : a) -> x";
const char* kUd = "forall a. (a -> a @ [a, a]) @ [a, a]";
const char* kIdUd = "tfun b -> fun (x : b) -> x";

std::string omega_src() {
  return std::string("(fun (x : ") + kU + ") -> x x) "
         "(fun (x : " + kU + ") -> x x)";
}

}  // namespace

TEST_CASE("the machine normalizes a value immediately") {
  Mode m = kAbortiveCbv;
  TermPtr v = pt(m, kIdU);
  MachineResult r = machine_eval(m, v);
  CHECK(r.outcome == Outcome::Normalized);
  CHECK(alpha_eq(r.result, v));
  CHECK(r.transitions <= 4);
}

TEST_CASE("the machine reproduces the golden runs") {
  struct Golden {
    Mode mode;
    std::string src;
    std::string result;
  };
  std::vector<Golden> goldens = {
      {kAbortiveCbv,
       std::string("callcc (k : (") + kU + ") cont) -> throw[" + kU +
           "] k (" + kIdU + ")",
       kIdU},
      {kDelimitedCbv,
       std::string("reset (shift (k : (") + kUd + ", " + kUd + ") cont) -> " +
           kIdUd + ")",
       kIdUd},
      {kDelimitedCbv,
       std::string("reset (shift (k : (") + kUd + ", " + kUd +
           ") cont) -> throw k (" + kIdUd + "))",
       kIdUd},
  };
  for (const Golden& g : goldens) {
    CAPTURE(g.src);
    TermPtr p = pt(g.mode, g.src);
    MachineResult r = machine_eval(g.mode, p);
    CHECK(r.outcome == Outcome::Normalized);
    CHECK(alpha_eq(r.result, pt(g.mode, g.result)));
    EvalResult ev = evaluate(g.mode, p);
    CHECK(ev.outcome == r.outcome);
    CHECK(alpha_eq(ev.result, r.result));
  }
}

TEST_CASE("the machine agrees with the stepper on generated corpora") {
  for (Mode m : kAllModes) {
    GenConfig cfg;
    cfg.mode = m;
    cfg.seed = 17;
    for (std::size_t i = 0; i < 200; ++i) {
      TermPtr p = generate_program(cfg, i);
      EvalResult ev = evaluate(m, p);
      MachineResult mr = machine_eval(m, p);
      REQUIRE(ev.outcome == Outcome::Normalized);
      REQUIRE(mr.outcome == Outcome::Normalized);
      CHECK(alpha_eq(ev.result, mr.result));
    }
  }
}

TEST_CASE("the machine mirrors the stuck taxonomy") {
  struct Case {
    Mode mode;
    TermPtr program;
    std::string reason;
  };
  Mode av = kAbortiveCbv;
  Mode dv = kDelimitedCbv;
  TermPtr idU = pt(av, kIdU);
  TermPtr idUd = pt(dv, kIdUd);
  std::vector<Case> cases;
  cases.push_back({av, mk_var("x"), "free variable x"});
  cases.push_back({av, mk_app(mk_tylam("a", idU), idU),
                   "type abstraction applied as a function"});
  cases.push_back(
      {av,
       mk_tyapp(pt(av, std::string("fun (x : ") + kU + ") -> x"),
                parse_type_string(kU, av)),
       "term abstraction applied to a type"});
  cases.push_back(
      {dv,
       mk_reset(mk_callcc("k", ContextType{parse_type_string(kU, av), nullptr},
                          idUd)),
       "callcc in a delimited program"});
  cases.push_back({av,
                   mk_shift("k",
                            ContextType{parse_type_string(kU, av),
                                        parse_type_string(kU, av)},
                            idU),
                   "shift in an abortive program"});
  cases.push_back({av, mk_reset(idU), "reset in an abortive program"});
  cases.push_back({av, mk_throw_var("k", parse_type_string(kU, av), idU),
                   "free continuation variable k"});
  cases.push_back({dv, idUd, "program not delimited by a top-level reset"});

  for (const Case& c : cases) {
    CAPTURE(c.reason);
    MachineResult mr = machine_eval(c.mode, c.program);
    CHECK(mr.outcome == Outcome::Stuck);
    CHECK(mr.stuck_reason == c.reason);
    EvalResult ev = evaluate(c.mode, c.program);
    CHECK(ev.outcome == Outcome::Stuck);
    CHECK(ev.stuck_reason == mr.stuck_reason);
  }
}

TEST_CASE("machine fuel counts transitions") {
  Mode m = kAbortiveCbv;
  TermPtr omega = pt(m, omega_src());
  MachineResult r = machine_eval(m, omega, 50);
  CHECK(r.outcome == Outcome::FuelExhausted);
  CHECK(r.transitions == 50);
}

TEST_CASE("by-name machines skip unused arguments entirely") {
  TermPtr p = mk_app(pt(kAbortiveCbv,
                        std::string("fun (x : ") + kU + ") -> " + kIdU),
                     pt(kAbortiveCbv, omega_src()));
  MachineResult lazy = machine_eval(kAbortiveCbn, p, 50);
  CHECK(lazy.outcome == Outcome::Normalized);
  CHECK(alpha_eq(lazy.result, pt(kAbortiveCbv, kIdU)));
  MachineResult eager = machine_eval(kAbortiveCbv, p, 50);
  CHECK(eager.outcome == Outcome::FuelExhausted);
  CHECK(evaluate(kAbortiveCbn, p, 50).outcome == Outcome::Normalized);
  CHECK(evaluate(kAbortiveCbv, p, 50).outcome == Outcome::FuelExhausted);
}

TEST_CASE("transition counts stay linear in the work done") {
  for (Mode m : kAllModes) {
    GenConfig cfg;
    cfg.mode = m;
    cfg.seed = 29;
    for (std::size_t i = 0; i < 100; ++i) {
      TermPtr p = generate_program(cfg, i);
      TraceResult tr = trace(m, p);
      REQUIRE(tr.outcome == Outcome::Normalized);
      std::size_t touched = 0;
      for (const TraceEntry& e : tr.entries) touched += term_size(e.program);
      MachineResult mr = machine_eval(m, p);
      REQUIRE(mr.outcome == Outcome::Normalized);
      // Each transition consumes a node of some intermediate program or
      // pops a frame pushed by such a transition.
      CHECK(mr.transitions <= 4 * touched + 16);
    }
  }
}

TEST_CASE("machine states visit eval, continue and done in order") {
  Mode m = kAbortiveCbv;
  TermPtr p = pt(m, std::string("callcc (k : (") + kU + ") cont) -> "
                        "throw[" + kU + "] k (" + kIdU + ")");
  std::vector<MachineTraceEntry> entries;
  MachineResult r = machine_eval(m, p, kDefaultMachineFuel, &entries);
  REQUIRE(r.outcome == Outcome::Normalized);
  REQUIRE(!entries.empty());
  CHECK(entries.front().state == "eval");
  CHECK(entries.back().state == "done");
  for (const MachineTraceEntry& e : entries)
    CHECK(e.state != "continue-meta");

  Mode d = kDelimitedCbv;
  TermPtr q = pt(d, std::string("reset (shift (k : (") + kUd + ", " + kUd +
                        ") cont) -> throw k (" + kIdUd + "))");
  entries.clear();
  r = machine_eval(d, q, kDefaultMachineFuel, &entries);
  REQUIRE(r.outcome == Outcome::Normalized);
  bool saw_meta = false;
  for (const MachineTraceEntry& e : entries)
    saw_meta = saw_meta || e.state == "continue-meta";
  CHECK(saw_meta);
  CHECK(entries.back().state == "done");
}

TEST_CASE("every machine state reconstitutes to an equivalent program") {
  // Plugging focus into context and metacontext at any mid-run state gives
  // a program that evaluates to the same final answer.
  for (Mode m : kAllModes) {
    GenConfig cfg;
    cfg.mode = m;
    cfg.seed = 41;
    cfg.max_term_depth = 5;
    for (std::size_t i = 0; i < 25; ++i) {
      TermPtr p = generate_program(cfg, i);
      std::vector<MachineTraceEntry> entries;
      MachineResult mr = machine_eval(m, p, kDefaultMachineFuel, &entries);
      REQUIRE(mr.outcome == Outcome::Normalized);
      for (std::size_t j = 0; j < entries.size(); j += 3) {
        const MachineTraceEntry& e = entries[j];
        if (e.state == "done") continue;
        if (m.family == Family::Delimited && e.meta.stack.empty()) continue;
        TermPtr rebuilt = plug_meta(plug(e.focus, e.ctx), e.meta);
        EvalResult ev = evaluate(m, rebuilt);
        REQUIRE(ev.outcome == Outcome::Normalized);
        CHECK(alpha_eq(ev.result, mr.result));
      }
    }
  }
}
