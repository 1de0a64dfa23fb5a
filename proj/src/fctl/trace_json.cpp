#include "fctl/trace_json.hpp"

#include "fctl/pretty.hpp"

namespace fctl {

namespace {

nlohmann::json meta_to_json(const Metacontext& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const Context& e : f.stack) {
    std::string s = pretty(e);
    out.push_back(s == "[]" ? "^[]" : s);
  }
  return out;
}

const char* kind_label(Decomposition::Kind k) {
  switch (k) {
    case Decomposition::Kind::Redex: return "redex";
    case Decomposition::Kind::Value: return "value";
    case Decomposition::Kind::ProgramValue: return "program-value";
    case Decomposition::Kind::Position: return "position";
  }
  return "?";
}

}  // namespace

nlohmann::json decomposition_to_json(Mode mode, const Decomposition& d) {
  nlohmann::json out;
  out["kind"] = kind_label(d.kind);
  if (d.kind == Decomposition::Kind::Redex) out["rule"] = rule_name(d.rule);
  out["focus"] = pretty(d.focus);
  out["context"] = pretty(d.ctx);
  if (mode.family == Family::Delimited)
    out["metacontext"] = meta_to_json(d.meta);
  return out;
}

nlohmann::json trace_to_json(Mode mode, const TraceResult& tr) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < tr.entries.size(); ++i) {
    const TraceEntry& e = tr.entries[i];
    nlohmann::json rec;
    rec["step"] = i;
    rec["program"] = pretty(e.program);
    rec["rule"] =
        e.rule ? nlohmann::json(rule_name(*e.rule)) : nlohmann::json(nullptr);
    bool last = i + 1 == tr.entries.size();
    if (!last) {
      rec["decomposition"] = decomposition_to_json(mode, *e.decomp);
    } else {
      rec["outcome"] = outcome_label(tr.outcome, mode);
      if (tr.outcome == Outcome::Normalized) {
        rec["result"] = pretty(tr.result);
        if (e.decomp) rec["decomposition"] = decomposition_to_json(mode, *e.decomp);
      }
      if (tr.outcome == Outcome::Stuck) rec["reason"] = tr.stuck_reason;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

nlohmann::json machine_trace_to_json(Mode mode,
                                     const std::vector<MachineTraceEntry>& tr,
                                     const MachineResult& res) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const MachineTraceEntry& e = tr[i];
    nlohmann::json rec;
    rec["engine"] = "machine";
    rec["step"] = i;
    rec["state"] = e.state;
    rec["focus"] = pretty(e.focus);
    rec["context"] = pretty(e.ctx);
    if (mode.family == Family::Delimited)
      rec["metacontext"] = meta_to_json(e.meta);
    if (i + 1 == tr.size()) {
      rec["outcome"] = outcome_label(res.outcome, mode);
      if (res.outcome == Outcome::Normalized) rec["result"] = pretty(res.result);
      if (res.outcome == Outcome::Stuck) rec["reason"] = res.stuck_reason;
    }
    out.push_back(std::move(rec));
  }
  if (tr.empty()) {
    nlohmann::json rec;
    rec["engine"] = "machine";
    rec["outcome"] = outcome_label(res.outcome, mode);
    if (res.outcome == Outcome::Stuck) rec["reason"] = res.stuck_reason;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace fctl
