// Acceptance gate: one line per criterion, nonzero exit on any failure.
//
// Criteria 1-5 and 7 run over the same generated corpus per mode (seed 42,
// 10000 programs, depth 8, control probability 0.3, fuel 100000). Criterion
// 6 replays the recorded golden programs and compares emitted bytes.
// Criterion 8 checks that every stuck-taxonomy witness is rejected by the
// typechecker and jams the engine for the stated reason.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fctl/parse.hpp"
#include "fctl/pretty.hpp"
#include "fctl/reduction.hpp"
#include "fctl/suite.hpp"
#include "fctl/syntax.hpp"
#include "fctl/trace_json.hpp"
#include "fctl/types_abortive.hpp"
#include "fctl/types_delimited.hpp"

using namespace fctl;

namespace {

constexpr std::size_t kCorpusPerMode = 10000;

int g_failures = 0;

void verdict(int number, const std::string& what, bool ok,
             const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": "
            << what;
  if (!ok && !detail.empty()) std::cout << " [" << detail << "]";
  std::cout << "\n";
  if (!ok) ++g_failures;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const PropertyResult* prop(const SuiteReport& rep, const std::string& name) {
  for (const PropertyResult& p : rep.props)
    if (p.name == name) return &p;
  return nullptr;
}

struct CorpusCriterion {
  int number;
  std::string prop_name;
  std::string label;
};

void run_corpus_criteria(const std::vector<SuiteReport>& reports,
                         const std::vector<CorpusCriterion>& rows) {
  for (const CorpusCriterion& row : rows) {
    bool ok = true;
    std::string detail;
    for (const SuiteReport& rep : reports) {
      const PropertyResult* p = prop(rep, row.prop_name);
      if (!p || p->checks != kCorpusPerMode || p->failures != 0) {
        ok = false;
        std::ostringstream os;
        os << to_string(rep.mode) << ": checks="
           << (p ? p->checks : std::size_t{0})
           << " failures=" << (p ? p->failures : std::size_t{0});
        if (p && !p->examples.empty()) os << " first: " << p->examples[0];
        detail = os.str();
        break;
      }
    }
    verdict(row.number, row.label + " (4 modes x " +
                            std::to_string(kCorpusPerMode) + " programs)",
            ok, detail);
  }
}

std::string trace_bytes(const ParsedProgram& p) {
  TraceResult tr = trace(p.mode, p.term);
  return trace_to_json(p.mode, tr).dump(2) + "\n";
}

void run_example_fidelity(const std::string& dir) {
  bool ok = true;
  std::string detail;

  struct Golden {
    const char* stem;
    std::vector<std::string> rules;
  };
  const std::vector<Golden> goldens = {
      {"callcc_throw", {"callcc", "throw_v"}},
      {"shift_discard", {"shift"}},
      {"shift_throw", {"shift", "throw_v", "reset"}},
  };
  for (const Golden& g : goldens) {
    std::string src = read_file(dir + "/" + std::string(g.stem) + ".fctl");
    std::string want =
        read_file(dir + "/" + std::string(g.stem) + ".trace.json");
    if (src.empty() || want.empty()) {
      ok = false;
      detail = std::string(g.stem) + ": golden files missing";
      break;
    }
    ParsedProgram p = parse_program(src, std::nullopt);
    TraceResult tr = trace(p.mode, p.term);
    std::vector<std::string> rules;
    for (const TraceEntry& e : tr.entries)
      if (e.rule) rules.push_back(rule_name(*e.rule));
    if (rules != g.rules) {
      ok = false;
      detail = std::string(g.stem) + ": rule sequence differs";
      break;
    }
    if (trace_bytes(p) != want) {
      ok = false;
      detail = std::string(g.stem) + ": emitted trace differs from recording";
      break;
    }
  }

  if (ok) {
    std::string src = read_file(dir + "/app_three_ways.fctl");
    std::string want = read_file(dir + "/app_three_ways.splits.json");
    ParsedProgram p = parse_program(src, std::nullopt);
    auto splits = enumerate_decompositions(p.mode, p.term);
    if (splits.size() != 3) {
      ok = false;
      detail = "application term: expected 3 splits, got " +
               std::to_string(splits.size());
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& d : splits)
        arr.push_back(decomposition_to_json(p.mode, d));
      if (arr.dump(2) + "\n" != want) {
        ok = false;
        detail = "application term: emitted splits differ from recording";
      }
    }
  }

  verdict(6,
          "recorded examples reproduce bit-exactly "
          "(three golden traces, three-way split)",
          ok, detail);
}

void run_negative_controls() {
  Mode av = kAbortiveCbv;
  Mode dv = kDelimitedCbv;
  TermPtr idU = parse_term("tfun a -> fun (x : a) -> x", av);
  TypePtr u = parse_type_string("forall a. a -> a", av);
  TermPtr idUd = parse_term("tfun b -> fun (x : b) -> x", dv);

  struct Witness {
    Mode mode;
    TermPtr program;
    std::string reason;
  };
  std::vector<Witness> witnesses;
  witnesses.push_back({av, mk_var("x"), "free variable x"});
  witnesses.push_back({av, mk_app(mk_tylam("a", idU), idU),
                       "type abstraction applied as a function"});
  witnesses.push_back({av, mk_tyapp(mk_lam("x", u, mk_var("x")), u),
                       "term abstraction applied to a type"});
  witnesses.push_back({dv,
                       mk_reset(mk_callcc("k", ContextType{u, nullptr}, idUd)),
                       "callcc in a delimited program"});
  witnesses.push_back({av, mk_shift("k", ContextType{u, u}, idU),
                       "shift in an abortive program"});
  witnesses.push_back({av, mk_reset(idU), "reset in an abortive program"});
  witnesses.push_back({av, mk_throw_var("k", u, idU),
                       "free continuation variable k"});
  witnesses.push_back({dv, idUd, "program not delimited by a top-level reset"});

  bool ok = true;
  std::string detail;
  for (const Witness& w : witnesses) {
    bool rejected = false;
    try {
      if (w.mode.family == Family::Abortive)
        check_program(w.mode, w.program);
      else
        check_program_delim(w.mode, w.program);
    } catch (const TypeError&) {
      rejected = true;
    }
    EvalResult ev = evaluate(w.mode, w.program);
    bool stuck_as_stated =
        ev.outcome == Outcome::Stuck && ev.stuck_reason == w.reason;
    if (!rejected || !stuck_as_stated) {
      ok = false;
      detail = w.reason + ": " + (rejected ? "" : "typechecker accepted; ") +
               (stuck_as_stated ? "" : "engine outcome differs");
      break;
    }
  }
  verdict(8,
          "stuck-taxonomy witnesses are rejected by the typechecker and jam "
          "the engine",
          ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string golden_dir = GOLDEN_DIR;
  if (argc > 1) golden_dir = argv[1];

  std::vector<SuiteReport> reports;
  for (Mode m : kAllModes) {
    SuiteConfig cfg;
    cfg.mode = m;
    cfg.seed = 42;
    cfg.count = kCorpusPerMode;
    cfg.max_term_depth = 8;
    cfg.control_prob = 0.3;
    cfg.fuel = kDefaultFuel;
    reports.push_back(run_suite(cfg));
    std::cerr << "corpus " << to_string(m) << ": " << reports.back().programs
              << " programs, " << reports.back().steps << " steps\n";
  }

  run_corpus_criteria(
      reports,
      {{1, "termination", "every well-typed program normalizes within fuel"},
       {2, "unique-decomposition",
        "each intermediate program has exactly one redex split"},
       {3, "plug-decompose-identity",
        "reconstitution is syntactically exact on the corpus"},
       {4, "machine-agreement",
        "machine and reduction results are alpha-equal with equal outcomes"},
       {5, "preservation",
        "every trace re-checks under its typing discipline"}});
  run_example_fidelity(golden_dir);
  run_corpus_criteria(
      reports,
      {{7, "round-trip", "parsing the printed form is alpha-identity"}});
  run_negative_controls();

  if (g_failures == 0) {
    std::cout << "acceptance: all criteria pass\n";
    return 0;
  }
  std::cout << "acceptance: " << g_failures << " criterion failure(s)\n";
  return 1;
}
