// Command-line front end. Talks to the core exclusively through the C API
// in fctl/fctl.h; the only other dependencies are CLI11 and the JSON
// library, both used for argument and output plumbing.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fctl/fctl.h"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitStuck = 2;
constexpr int kExitFuel = 3;
constexpr int kExitProperty = 4;

struct Opts {
  std::string input;
  std::vector<std::string> mode;  // two tokens: family strategy
  std::uint64_t fuel = 0;         // 0 = engine default
  bool json = false;
  std::string engine = "reduction";
  bool all = false;
  std::uint64_t seed = 42;
  std::uint64_t count = 1;
  int depth = 8;
};

std::string freed(char* s) {
  std::string out = s ? s : "";
  fctl_free_string(s);
  return out;
}

int status_exit(int status) {
  switch (status) {
    case FCTL_OK:
      return 0;
    case FCTL_ERR_STUCK:
      return kExitStuck;
    case FCTL_ERR_FUEL:
      return kExitFuel;
    case FCTL_ERR_PROPERTY:
      return kExitProperty;
    default:
      return kExitInput;
  }
}

bool read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream f(path);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

using ProgramHandle = std::unique_ptr<fctl_program, void (*)(fctl_program*)>;

int parse_input(const Opts& o, bool allow_reified, ProgramHandle& out) {
  std::string src;
  if (!read_input(o.input, src)) {
    std::cerr << "fctl: cannot read " << o.input << "\n";
    return kExitInput;
  }
  const char* family = o.mode.size() == 2 ? o.mode[0].c_str() : nullptr;
  const char* strategy = o.mode.size() == 2 ? o.mode[1].c_str() : nullptr;
  fctl_program* p = nullptr;
  char* err = nullptr;
  int st = fctl_parse(src.c_str(), family, strategy, allow_reified ? 1 : 0,
                      &p, &err);
  if (st != FCTL_OK) {
    std::cerr << "fctl: " << freed(err) << "\n";
    return status_exit(st);
  }
  out = ProgramHandle(p, fctl_program_free);
  return 0;
}

void add_common(CLI::App* cmd, Opts& o, bool with_fuel) {
  cmd->add_option("input", o.input, "program file, or - for stdin")
      ->required();
  cmd->add_option("--mode", o.mode,
                  "family and strategy, e.g. --mode abortive cbv "
                  "(overrides the #mode header)")
      ->expected(2);
  if (with_fuel)
    cmd->add_option("--fuel", o.fuel, "step budget (0 = default)");
  cmd->add_flag("--json", o.json, "machine-readable output");
}

int run_check(const Opts& o) {
  ProgramHandle p(nullptr, fctl_program_free);
  if (int rc = parse_input(o, false, p)) return rc;
  char* ty = nullptr;
  char* err = nullptr;
  int st = fctl_check(p.get(), &ty, &err);
  if (st != FCTL_OK) {
    std::cerr << "fctl: " << freed(err) << "\n";
    return status_exit(st);
  }
  std::string type_text = freed(ty);
  if (o.json) {
    nlohmann::json j;
    j["type"] = type_text;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << type_text << "\n";
  }
  return 0;
}

int eval_with_engine(const Opts& o, fctl_program* p, const std::string& engine,
                     std::string& result, std::string& err_text) {
  char* res = nullptr;
  char* err = nullptr;
  int st = engine == "machine"
               ? fctl_machine_eval(p, o.fuel, &res, &err)
               : fctl_eval(p, o.fuel, &res, &err);
  result = freed(res);
  err_text = freed(err);
  return st;
}

int run_eval(const Opts& o) {
  ProgramHandle p(nullptr, fctl_program_free);
  if (int rc = parse_input(o, false, p)) return rc;
  if (o.engine == "both") {
    std::string r1, e1, r2, e2;
    int s1 = eval_with_engine(o, p.get(), "reduction", r1, e1);
    int s2 = eval_with_engine(o, p.get(), "machine", r2, e2);
    if (s1 == FCTL_ERR_INPUT) {
      std::cerr << "fctl: " << e1 << "\n";
      return kExitInput;
    }
    if (s1 != s2 || (s1 == FCTL_OK && r1 != r2)) {
      std::cerr << "fctl: engines disagree: reduction gave " << r1
                << " (status " << s1 << "), machine gave " << r2
                << " (status " << s2 << ")\n";
      return kExitProperty;
    }
    if (o.json) {
      nlohmann::json j;
      j["result"] = r1;
      j["engines"] = {"reduction", "machine"};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << r1 << "\n";
    }
    if (s1 == FCTL_ERR_STUCK && !e1.empty()) std::cerr << "fctl: " << e1 << "\n";
    return status_exit(s1);
  }
  std::string result, err_text;
  int st = eval_with_engine(o, p.get(), o.engine, result, err_text);
  if (st == FCTL_ERR_INPUT) {
    std::cerr << "fctl: " << err_text << "\n";
    return kExitInput;
  }
  if (o.json) {
    nlohmann::json j;
    j["result"] = result;
    j["engine"] = o.engine;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << result << "\n";
  }
  if (st == FCTL_ERR_STUCK && !err_text.empty())
    std::cerr << "fctl: " << err_text << "\n";
  return status_exit(st);
}

int trace_with_engine(const Opts& o, fctl_program* p,
                      const std::string& engine, std::string& json_text) {
  char* js = nullptr;
  int st = engine == "machine" ? fctl_machine_trace(p, o.fuel, &js)
                               : fctl_trace(p, o.fuel, &js);
  json_text = freed(js);
  return st;
}

int run_trace(const Opts& o) {
  ProgramHandle p(nullptr, fctl_program_free);
  if (int rc = parse_input(o, false, p)) return rc;
  if (o.engine == "both") {
    std::string j1, j2;
    int s1 = trace_with_engine(o, p.get(), "reduction", j1);
    int s2 = trace_with_engine(o, p.get(), "machine", j2);
    if (s1 == FCTL_ERR_INPUT) {
      std::cerr << "fctl: " << j1 << "\n";
      return kExitInput;
    }
    nlohmann::json both;
    both["reduction"] = nlohmann::json::parse(j1);
    both["machine"] = nlohmann::json::parse(j2);
    std::cout << both.dump(2) << "\n";
    if (s1 != s2) {
      std::cerr << "fctl: engines disagree on the outcome\n";
      return kExitProperty;
    }
    return status_exit(s1);
  }
  std::string js;
  int st = trace_with_engine(o, p.get(), o.engine, js);
  if (st == FCTL_ERR_INPUT) {
    std::cerr << "fctl: " << js << "\n";
    return kExitInput;
  }
  std::cout << js << "\n";
  return status_exit(st);
}

int run_step(const Opts& o) {
  ProgramHandle p(nullptr, fctl_program_free);
  if (int rc = parse_input(o, true, p)) return rc;
  fctl_program* stepped = nullptr;
  char* err = nullptr;
  int st = fctl_step(p.get(), o.count, &stepped, &err);
  if (st != FCTL_OK) {
    std::cerr << "fctl: " << freed(err) << "\n";
    return status_exit(st);
  }
  ProgramHandle sp(stepped, fctl_program_free);
  char* text = nullptr;
  fctl_render(sp.get(), &text);
  std::string program_text = freed(text);
  if (o.json) {
    nlohmann::json j;
    j["program"] = program_text;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << program_text << "\n";
  }
  return 0;
}

int run_decompose(const Opts& o) {
  ProgramHandle p(nullptr, fctl_program_free);
  if (int rc = parse_input(o, true, p)) return rc;
  char* js = nullptr;
  int st = fctl_decompose(p.get(), o.all ? 1 : 0, &js);
  std::cout << freed(js) << "\n";
  return status_exit(st);
}

int run_fuzz(const Opts& o) {
  if (o.mode.size() != 2) {
    std::cerr << "fctl: fuzz requires --mode\n";
    return kExitInput;
  }
  char* report = nullptr;
  char* err = nullptr;
  int st = fctl_fuzz(o.mode[0].c_str(), o.mode[1].c_str(), o.seed, o.count,
                     o.depth, o.json ? 1 : 0, &report, &err);
  if (report) std::cout << freed(report);
  std::string err_text = freed(err);
  if (!err_text.empty()) std::cerr << "fctl: " << err_text << "\n";
  return status_exit(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for typed control calculi"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fctl_version());

  Opts check_o, eval_o, trace_o, step_o, dec_o, fuzz_o;
  fuzz_o.count = 100;

  CLI::App* check = app.add_subcommand("check", "typecheck a program");
  add_common(check, check_o, false);

  CLI::App* eval = app.add_subcommand("eval", "evaluate to a value");
  add_common(eval, eval_o, true);
  eval->add_option("--engine", eval_o.engine, "reduction, machine or both")
      ->check(CLI::IsMember({"reduction", "machine", "both"}));

  CLI::App* trace = app.add_subcommand("trace", "emit the full trace as JSON");
  add_common(trace, trace_o, true);
  trace->add_option("--engine", trace_o.engine, "reduction, machine or both")
      ->check(CLI::IsMember({"reduction", "machine", "both"}));

  CLI::App* step = app.add_subcommand("step", "apply a number of steps");
  add_common(step, step_o, false);
  step->add_option("--count", step_o.count, "steps to apply (default 1)");

  CLI::App* dec = app.add_subcommand("decompose",
                                     "show the canonical decomposition");
  add_common(dec, dec_o, false);
  dec->add_flag("--all", dec_o.all, "every grammar-valid split");

  CLI::App* fuzz = app.add_subcommand("fuzz", "run the property suite");
  fuzz->add_option("--mode", fuzz_o.mode, "family and strategy (required)")
      ->expected(2);
  fuzz->add_option("--seed", fuzz_o.seed, "corpus seed (default 42)");
  fuzz->add_option("--count", fuzz_o.count, "programs to generate");
  fuzz->add_option("--depth", fuzz_o.depth, "maximum term depth");
  fuzz->add_flag("--json", fuzz_o.json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the bad-input exit code; --help and --version
    // still exit zero.
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  if (check->parsed()) return run_check(check_o);
  if (eval->parsed()) return run_eval(eval_o);
  if (trace->parsed()) return run_trace(trace_o);
  if (step->parsed()) return run_step(step_o);
  if (dec->parsed()) return run_decompose(dec_o);
  if (fuzz->parsed()) return run_fuzz(fuzz_o);
  return 0;
}
