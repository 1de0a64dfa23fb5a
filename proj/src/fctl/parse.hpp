#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "fctl/syntax.hpp"

namespace fctl {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg), line(line_), col(col_) {}
};

// Parses a bare term. Reified contexts ("throw ^[..] t") are accepted only
// with allow_reified, which trace tooling uses; source programs are plain.
TermPtr parse_term(const std::string& src, Mode mode,
                   bool allow_reified = false);

TypePtr parse_type_string(const std::string& src, Mode mode);

struct ParsedProgram {
  Mode mode;
  TermPtr term;
};

// Parses a program file: an optional "#mode <family> <strategy>" header line
// followed by a single term. override_mode wins over the header; one of the
// two must determine a mode.
ParsedProgram parse_program(const std::string& src,
                            const std::optional<Mode>& override_mode,
                            bool allow_reified = false);

}  // namespace fctl
