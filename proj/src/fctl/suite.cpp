#include "fctl/suite.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "fctl/machine.hpp"
#include "fctl/parse.hpp"
#include "fctl/pretty.hpp"
#include "fctl/types_abortive.hpp"
#include "fctl/types_delimited.hpp"

namespace fctl {

bool SuiteReport::ok() const {
  return std::all_of(props.begin(), props.end(),
                     [](const PropertyResult& p) { return p.failures == 0; });
}

std::size_t term_size(const TermPtr& t) {
  if (!t) return 0;
  std::size_t n = 1;
  if (auto* l = as<Lam>(t)) return n + term_size(l->body);
  if (auto* a = as<App>(t)) return n + term_size(a->fn) + term_size(a->arg);
  if (auto* tl = as<TyLam>(t)) return n + term_size(tl->body);
  if (auto* ta = as<TyApp>(t)) return n + term_size(ta->fn);
  if (auto* c = as<Callcc>(t)) return n + term_size(c->body);
  if (auto* s = as<Shift>(t)) return n + term_size(s->body);
  if (auto* r = as<Reset>(t)) return n + term_size(r->body);
  if (auto* tv = as<ThrowVar>(t)) return n + term_size(tv->arg);
  if (auto* tc = as<ThrowCtx>(t)) {
    for (const auto& fr : tc->ctx.frames) {
      if (auto* af = as<AppFrame>(fr)) n += term_size(af->arg);
      if (auto* ff = as<FunFrame>(fr)) n += term_size(ff->fn);
      if (as<TyAppFrame>(fr)) n += 1;
      if (auto* th = as<ThrowFrame>(fr)) n += 1 + th->ctx.frames.size();
    }
    return n + term_size(tc->arg);
  }
  return n;
}

// ---------------------------------------------------------------------------
// Shrinking
// ---------------------------------------------------------------------------

namespace {

void collect_subterms(const TermPtr& t, std::vector<TermPtr>& out) {
  if (!t) return;
  out.push_back(t);
  if (auto* l = as<Lam>(t)) return collect_subterms(l->body, out);
  if (auto* a = as<App>(t)) {
    collect_subterms(a->fn, out);
    collect_subterms(a->arg, out);
    return;
  }
  if (auto* tl = as<TyLam>(t)) return collect_subterms(tl->body, out);
  if (auto* ta = as<TyApp>(t)) return collect_subterms(ta->fn, out);
  if (auto* c = as<Callcc>(t)) return collect_subterms(c->body, out);
  if (auto* s = as<Shift>(t)) return collect_subterms(s->body, out);
  if (auto* r = as<Reset>(t)) return collect_subterms(r->body, out);
  if (auto* tv = as<ThrowVar>(t)) return collect_subterms(tv->arg, out);
  if (auto* tc = as<ThrowCtx>(t)) return collect_subterms(tc->arg, out);
}

}  // namespace

TermPtr shrink_failure(Mode mode, const TermPtr& program,
                       const std::function<bool(const TermPtr&)>& still_fails) {
  TermPtr cur = program;
  for (;;) {
    std::vector<TermPtr> subs;
    collect_subterms(cur, subs);
    std::vector<TermPtr> cands;
    for (const auto& s : subs) {
      if (s == cur || !is_closed(s)) continue;
      if (mode.family == Family::Delimited && !as<Reset>(s)) continue;
      cands.push_back(s);
    }
    std::sort(cands.begin(), cands.end(),
              [](const TermPtr& a, const TermPtr& b) {
                return term_size(a) < term_size(b);
              });
    TermPtr next;
    for (const auto& c : cands) {
      if (term_size(c) >= term_size(cur)) break;
      if (still_fails(c)) {
        next = c;
        break;
      }
    }
    if (!next) return cur;
    cur = next;
  }
}

// ---------------------------------------------------------------------------
// Property checks
// ---------------------------------------------------------------------------

namespace {

struct Oracle {
  Mode mode;
  std::size_t fuel;

  bool typecheck(const TermPtr& p, TypePtr* s0, TypePtr* sk) const {
    try {
      if (mode.family == Family::Abortive) {
        TypePtr s = check_program(mode, p);
        if (s0) *s0 = s;
      } else {
        TypePtr s = check_program_delim(mode, p);
        if (s0) *s0 = s;
        if (sk) *sk = skolemize(s);
      }
      return true;
    } catch (const TypeError&) {
      return false;
    }
  }

  std::optional<std::string> viol_termination(const TraceResult& tr) const {
    if (tr.outcome == Outcome::Normalized) return std::nullopt;
    return "outcome " + outcome_label(tr.outcome, mode) +
           (tr.stuck_reason.empty() ? "" : ": " + tr.stuck_reason);
  }

  std::optional<std::string> viol_unique(const TraceResult& tr) const {
    for (std::size_t i = 0; i < tr.entries.size(); ++i) {
      const TermPtr& p = tr.entries[i].program;
      auto all = enumerate_decompositions(mode, p);
      std::vector<Decomposition> redexes;
      for (const auto& d : all)
        if (d.kind == Decomposition::Kind::Redex) redexes.push_back(d);
      DecomposeResult dr = decompose(mode, p);
      if (auto* dec = std::get_if<Decomposition>(&dr)) {
        if (dec->kind == Decomposition::Kind::Redex) {
          if (redexes.size() != 1)
            return "step " + std::to_string(i) + ": " +
                   std::to_string(redexes.size()) + " redex splits";
          const Decomposition& e = redexes.front();
          if (e.rule != dec->rule || !exact_eq(e.focus, dec->focus) ||
              !exact_eq(e.ctx, dec->ctx) || !exact_eq(e.meta, dec->meta))
            return "step " + std::to_string(i) +
                   ": enumerated redex differs from decompose()";
        } else if (!redexes.empty()) {
          return "step " + std::to_string(i) + ": value program has " +
                 std::to_string(redexes.size()) + " redex splits";
        }
      } else if (!redexes.empty()) {
        return "step " + std::to_string(i) + ": stuck program has " +
               std::to_string(redexes.size()) + " redex splits";
      }
    }
    return std::nullopt;
  }

  std::optional<std::string> viol_plug(const TraceResult& tr) const {
    for (std::size_t i = 0; i < tr.entries.size(); ++i) {
      const auto& e = tr.entries[i];
      if (!e.decomp) continue;
      if (!exact_eq(reconstitute(mode, *e.decomp), e.program))
        return "step " + std::to_string(i) +
               ": reconstituted program differs";
    }
    return std::nullopt;
  }

  std::optional<std::string> viol_machine(const TermPtr& p,
                                          const TraceResult& tr) const {
    MachineResult mr = machine_eval(mode, p);
    if (mr.outcome != tr.outcome)
      return "machine outcome " + outcome_label(mr.outcome, mode) +
             " vs reduction outcome " + outcome_label(tr.outcome, mode);
    if (tr.outcome == Outcome::Normalized && !alpha_eq(mr.result, tr.result))
      return "machine value " + pretty(mr.result) +
             " vs reduction value " + pretty(tr.result);
    return std::nullopt;
  }

  std::optional<std::string> viol_preservation(const TraceResult& tr,
                                               const TypePtr& s0,
                                               const TypePtr& sk) const {
    for (std::size_t i = 0; i < tr.entries.size(); ++i) {
      const TermPtr& p = tr.entries[i].program;
      try {
        if (mode.family == Family::Abortive) {
          std::vector<TypePtr> answers;
          TypePtr si = check_runtime(mode, p, &answers);
          if (!alpha_eq(si, s0))
            return "step " + std::to_string(i) + ": type " + pretty(si) +
                   " differs from " + pretty(s0);
          for (const auto& a : answers)
            if (!alpha_eq(a, s0))
              return "step " + std::to_string(i) +
                     ": captured context answers " + pretty(a) + ", not " +
                     pretty(s0);
        } else {
          check_runtime_delim_at(mode, p, sk);
        }
      } catch (const TypeError& e) {
        return "step " + std::to_string(i) + ": " + e.what();
      }
    }
    return std::nullopt;
  }

  std::optional<std::string> viol_roundtrip(const TraceResult& tr) const {
    for (std::size_t i = 0; i < tr.entries.size(); ++i) {
      const TermPtr& p = tr.entries[i].program;
      std::string s = pretty(p);
      try {
        TermPtr q = parse_term(s, mode, true);
        if (!alpha_eq(q, p))
          return "step " + std::to_string(i) +
                 ": reparse is not alpha-equal: " + s;
      } catch (const ParseError& e) {
        return "step " + std::to_string(i) + ": reparse failed (" + e.what() +
               "): " + s;
      }
    }
    return std::nullopt;
  }
};

enum PropIx {
  kTermination = 0,
  kUnique,
  kPlug,
  kMachine,
  kPreservation,
  kRoundTrip,
  kPropCount
};

const char* kPropNames[kPropCount] = {
    "termination",  "unique-decomposition", "plug-decompose-identity",
    "machine-agreement", "preservation",    "round-trip"};

}  // namespace

SuiteReport run_suite(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.mode = cfg.mode;
  rep.props.resize(kPropCount);
  for (int i = 0; i < kPropCount; ++i) rep.props[i].name = kPropNames[i];

  GenConfig gen{cfg.mode, cfg.seed, cfg.max_term_depth, cfg.control_prob};
  Oracle oracle{cfg.mode, cfg.fuel};

  auto fails_prop = [&](int prop, const TermPtr& cand) -> bool {
    TypePtr s0, sk;
    if (!oracle.typecheck(cand, &s0, &sk)) return false;
    TraceResult tr = trace(cfg.mode, cand, cfg.fuel);
    switch (prop) {
      case kTermination:
        return oracle.viol_termination(tr).has_value();
      case kUnique:
        return oracle.viol_unique(tr).has_value();
      case kPlug:
        return oracle.viol_plug(tr).has_value();
      case kMachine:
        return oracle.viol_machine(cand, tr).has_value();
      case kPreservation:
        return oracle.viol_preservation(tr, s0, sk).has_value();
      default:
        return oracle.viol_roundtrip(tr).has_value();
    }
  };

  auto record = [&](int prop, std::size_t index, const TermPtr& p,
                    const std::string& detail) {
    PropertyResult& pr = rep.props[prop];
    pr.failures++;
    if (pr.examples.size() >= cfg.max_examples) return;
    TermPtr small = shrink_failure(
        cfg.mode, p, [&](const TermPtr& c) { return fails_prop(prop, c); });
    std::ostringstream os;
    os << "index " << index << ": " << detail << "\n    program: " << pretty(p);
    if (!exact_eq(small, p)) os << "\n    shrunk: " << pretty(small);
    pr.examples.push_back(os.str());
  };

  for (std::size_t index = 0; index < cfg.count; ++index) {
    TermPtr p = generate_program(gen, index);
    rep.programs++;

    TypePtr s0, sk;
    if (!oracle.typecheck(p, &s0, &sk)) {
      rep.props[kPreservation].checks++;
      record(kPreservation, index, p, "generated program rejected");
      continue;
    }
    TraceResult tr = trace(cfg.mode, p, cfg.fuel);
    rep.steps += tr.steps;

    struct Row {
      int prop;
      std::optional<std::string> viol;
    };
    Row rows[kPropCount] = {
        {kTermination, oracle.viol_termination(tr)},
        {kUnique, oracle.viol_unique(tr)},
        {kPlug, oracle.viol_plug(tr)},
        {kMachine, oracle.viol_machine(p, tr)},
        {kPreservation, oracle.viol_preservation(tr, s0, sk)},
        {kRoundTrip, oracle.viol_roundtrip(tr)},
    };
    for (const auto& row : rows) {
      rep.props[row.prop].checks++;
      if (row.viol) record(row.prop, index, p, *row.viol);
    }
  }
  return rep;
}

std::string report_text(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite " << to_string(r.mode) << ": programs=" << r.programs
     << " steps=" << r.steps << "\n";
  for (const auto& p : r.props) {
    os << "  " << p.name;
    for (std::size_t i = p.name.size(); i < 26; ++i) os << ' ';
    os << "checks=" << p.checks << " failures=" << p.failures << "\n";
    for (const auto& e : p.examples) os << "    " << e << "\n";
  }
  os << (r.ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string report_json_string(const SuiteReport& r) {
  nlohmann::json j;
  j["mode"] = to_string(r.mode);
  j["programs"] = r.programs;
  j["steps"] = r.steps;
  j["ok"] = r.ok();
  j["properties"] = nlohmann::json::array();
  for (const auto& p : r.props) {
    nlohmann::json pj;
    pj["name"] = p.name;
    pj["checks"] = p.checks;
    pj["failures"] = p.failures;
    pj["examples"] = p.examples;
    j["properties"].push_back(pj);
  }
  return j.dump(2);
}

}  // namespace fctl
