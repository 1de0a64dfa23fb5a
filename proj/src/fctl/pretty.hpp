#pragma once

#include <string>

#include "fctl/syntax.hpp"

namespace fctl {

// Concrete syntax, parseable back by the parser (reified contexts only with
// allow_reified). Modes never change how a term prints: abortive and
// delimited constructs are distinguishable from the tree itself.

std::string pretty(const TypePtr& t);
std::string pretty(const ArgType& t);
std::string pretty(const TermPtr& t);
// Standalone contexts print as "[]" when empty and "^[ f1; ...; fn ]"
// otherwise, frames innermost first. Inside throw terms the "^[..]" form is
// used even when empty.
std::string pretty(const Context& e);
// Contexts joined innermost-first with " . ", ending in "#" (the empty
// metacontext).
std::string pretty(const Metacontext& f);
std::string pretty(const ContextType& t);
std::string pretty(const MetacontextType& t);

}  // namespace fctl
