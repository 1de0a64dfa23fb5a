#pragma once

#include <json.hpp>

#include "fctl/machine.hpp"
#include "fctl/reduction.hpp"

namespace fctl {

// A trace is a JSON array, one record per program in the reduction
// sequence. Every record carries step, program and rule (null on the last
// record); non-final records carry the decomposition, the final record the
// outcome ("value", "program-value", "fuel-exhausted" or "stuck") and, when
// normalized, the result payload. Machine traces use the same family of
// records tagged with "engine": "machine".

nlohmann::json decomposition_to_json(Mode mode, const Decomposition& d);
nlohmann::json trace_to_json(Mode mode, const TraceResult& tr);
nlohmann::json machine_trace_to_json(Mode mode,
                                     const std::vector<MachineTraceEntry>& tr,
                                     const MachineResult& res);

}  // namespace fctl
