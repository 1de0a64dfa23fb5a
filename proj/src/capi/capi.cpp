#include "fctl/fctl.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fctl/machine.hpp"
#include "fctl/parse.hpp"
#include "fctl/pretty.hpp"
#include "fctl/reduction.hpp"
#include "fctl/suite.hpp"
#include "fctl/trace_json.hpp"
#include "fctl/types_abortive.hpp"
#include "fctl/types_delimited.hpp"

struct fctl_program {
  fctl::Mode mode;
  fctl::TermPtr term;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_out(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

int outcome_status(fctl::Outcome o) {
  switch (o) {
    case fctl::Outcome::Normalized:
      return FCTL_OK;
    case fctl::Outcome::Stuck:
      return FCTL_ERR_STUCK;
    default:
      return FCTL_ERR_FUEL;
  }
}

std::optional<fctl::Mode> mode_arg(const char* family, const char* strategy,
                                   char** error) {
  if (!family && !strategy) return std::nullopt;
  if (!family || !strategy) {
    set_out(error, "family and strategy must be given together");
    return std::nullopt;
  }
  auto m = fctl::mode_of_string(family, strategy);
  if (!m) set_out(error, std::string("unknown mode: ") + family + " " + strategy);
  return m;
}

fctl::TypePtr check_any(fctl::Mode mode, const fctl::TermPtr& t) {
  return mode.family == fctl::Family::Abortive
             ? fctl::check_program(mode, t)
             : fctl::check_program_delim(mode, t);
}

}  // namespace

extern "C" {

const char* fctl_version(void) { return "0.1.0"; }

void fctl_free_string(char* s) { std::free(s); }

int fctl_parse(const char* src, const char* family, const char* strategy,
               int allow_reified, fctl_program** out, char** error) {
  if (!src || !out) {
    set_out(error, "src and out are required");
    return FCTL_ERR_INVALID;
  }
  *out = nullptr;
  char* mode_err = nullptr;
  auto mode = mode_arg(family, strategy, &mode_err);
  if (mode_err) {
    if (error)
      *error = mode_err;
    else
      fctl_free_string(mode_err);
    return FCTL_ERR_INVALID;
  }
  try {
    fctl::ParsedProgram p =
        fctl::parse_program(src, mode, allow_reified != 0);
    *out = new fctl_program{p.mode, p.term};
    return FCTL_OK;
  } catch (const fctl::ParseError& e) {
    set_out(error, "line " + std::to_string(e.line) + ", col " +
                       std::to_string(e.col) + ": " + e.what());
    return FCTL_ERR_INPUT;
  } catch (const std::bad_alloc&) {
    set_out(error, "out of memory");
    return FCTL_ERR_INVALID;
  }
}

void fctl_program_free(fctl_program* p) { delete p; }

int fctl_render(const fctl_program* p, char** text) {
  if (!p || !text) return FCTL_ERR_INVALID;
  *text = dup_string(fctl::pretty(p->term));
  return FCTL_OK;
}

int fctl_program_mode(const fctl_program* p, char** family, char** strategy) {
  if (!p) return FCTL_ERR_INVALID;
  if (family)
    *family = dup_string(p->mode.family == fctl::Family::Abortive
                             ? "abortive"
                             : "delimited");
  if (strategy)
    *strategy = dup_string(p->mode.strategy == fctl::Strategy::Cbv ? "cbv"
                                                                   : "cbn");
  return FCTL_OK;
}

int fctl_check(const fctl_program* p, char** type_text, char** error) {
  if (!p) {
    set_out(error, "null program");
    return FCTL_ERR_INVALID;
  }
  try {
    fctl::TypePtr ty = check_any(p->mode, p->term);
    set_out(type_text, fctl::pretty(ty));
    return FCTL_OK;
  } catch (const fctl::TypeError& e) {
    set_out(error, e.what());
    return FCTL_ERR_INPUT;
  }
}

int fctl_eval(const fctl_program* p, uint64_t fuel, char** result_text,
              char** error) {
  if (!p) {
    set_out(error, "null program");
    return FCTL_ERR_INVALID;
  }
  try {
    check_any(p->mode, p->term);
  } catch (const fctl::TypeError& e) {
    set_out(error, e.what());
    return FCTL_ERR_INPUT;
  }
  fctl::EvalResult r =
      fctl::evaluate(p->mode, p->term, fuel ? fuel : fctl::kDefaultFuel);
  set_out(result_text, fctl::pretty(r.result));
  if (r.outcome == fctl::Outcome::Stuck) set_out(error, r.stuck_reason);
  return outcome_status(r.outcome);
}

int fctl_trace(const fctl_program* p, uint64_t fuel, char** json) {
  if (!p || !json) return FCTL_ERR_INVALID;
  try {
    check_any(p->mode, p->term);
  } catch (const fctl::TypeError& e) {
    set_out(json, std::string("{\"error\": \"") + e.what() + "\"}");
    return FCTL_ERR_INPUT;
  }
  fctl::TraceResult tr =
      fctl::trace(p->mode, p->term, fuel ? fuel : fctl::kDefaultFuel);
  set_out(json, fctl::trace_to_json(p->mode, tr).dump(2));
  return outcome_status(tr.outcome);
}

int fctl_machine_trace(const fctl_program* p, uint64_t fuel, char** json) {
  if (!p || !json) return FCTL_ERR_INVALID;
  try {
    check_any(p->mode, p->term);
  } catch (const fctl::TypeError& e) {
    set_out(json, std::string("{\"error\": \"") + e.what() + "\"}");
    return FCTL_ERR_INPUT;
  }
  std::vector<fctl::MachineTraceEntry> entries;
  fctl::MachineResult mr = fctl::machine_eval(
      p->mode, p->term, fuel ? fuel : fctl::kDefaultMachineFuel, &entries);
  set_out(json, fctl::machine_trace_to_json(p->mode, entries, mr).dump(2));
  return outcome_status(mr.outcome);
}

int fctl_machine_eval(const fctl_program* p, uint64_t fuel,
                      char** result_text, char** error) {
  if (!p) {
    set_out(error, "null program");
    return FCTL_ERR_INVALID;
  }
  try {
    check_any(p->mode, p->term);
  } catch (const fctl::TypeError& e) {
    set_out(error, e.what());
    return FCTL_ERR_INPUT;
  }
  fctl::MachineResult r = fctl::machine_eval(
      p->mode, p->term, fuel ? fuel : fctl::kDefaultMachineFuel);
  set_out(result_text, fctl::pretty(r.result));
  if (r.outcome == fctl::Outcome::Stuck) set_out(error, r.stuck_reason);
  return outcome_status(r.outcome);
}

int fctl_step(const fctl_program* p, uint64_t count, fctl_program** out,
              char** error) {
  if (!p || !out) {
    set_out(error, "null program or out");
    return FCTL_ERR_INVALID;
  }
  *out = nullptr;
  try {
    check_any(p->mode, p->term);
  } catch (const fctl::TypeError& e) {
    set_out(error, e.what());
    return FCTL_ERR_INPUT;
  }
  fctl::TermPtr cur = p->term;
  for (uint64_t i = 0; i < count; ++i) {
    fctl::StepResult r = fctl::step(p->mode, cur);
    if (auto* ok = std::get_if<fctl::StepOk>(&r)) {
      cur = ok->program;
      continue;
    }
    if (std::get_if<fctl::StepDone>(&r)) break;
    set_out(error, std::get<fctl::StuckInfo>(r).reason);
    return FCTL_ERR_STUCK;
  }
  *out = new fctl_program{p->mode, cur};
  return FCTL_OK;
}

int fctl_decompose(const fctl_program* p, int all, char** json) {
  if (!p || !json) return FCTL_ERR_INVALID;
  if (all) {
    auto ds = fctl::enumerate_decompositions(p->mode, p->term);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : ds)
      arr.push_back(fctl::decomposition_to_json(p->mode, d));
    set_out(json, arr.dump(2));
    return FCTL_OK;
  }
  fctl::DecomposeResult dr = fctl::decompose(p->mode, p->term);
  if (auto* dec = std::get_if<fctl::Decomposition>(&dr)) {
    set_out(json, fctl::decomposition_to_json(p->mode, *dec).dump(2));
    return FCTL_OK;
  }
  const auto& stuck = std::get<fctl::StuckInfo>(dr);
  nlohmann::json j;
  j["stuck"] = stuck.reason;
  j["at"] = fctl::pretty(stuck.at);
  set_out(json, j.dump(2));
  return FCTL_ERR_STUCK;
}

int fctl_fuzz(const char* family, const char* strategy, uint64_t seed,
              uint64_t count, int max_depth, int as_json, char** report,
              char** error) {
  char* mode_err = nullptr;
  auto mode = mode_arg(family, strategy, &mode_err);
  if (mode_err) {
    if (error)
      *error = mode_err;
    else
      fctl_free_string(mode_err);
    return FCTL_ERR_INVALID;
  }
  if (!mode) {
    set_out(error, "fuzz requires an explicit mode");
    return FCTL_ERR_INVALID;
  }
  fctl::SuiteConfig cfg;
  cfg.mode = *mode;
  cfg.seed = seed;
  cfg.count = count;
  if (max_depth > 0) cfg.max_term_depth = max_depth;
  try {
    fctl::SuiteReport rep = fctl::run_suite(cfg);
    set_out(report, as_json ? fctl::report_json_string(rep)
                            : fctl::report_text(rep));
    return rep.ok() ? FCTL_OK : FCTL_ERR_PROPERTY;
  } catch (const std::exception& e) {
    set_out(error, e.what());
    return FCTL_ERR_PROPERTY;
  }
}

}  // extern "C"
