#pragma once

#include <stdexcept>
#include <string>

#include "plover/program.hpp"

namespace plover {

struct ParseError : std::runtime_error {
  ParseError(int line_, int column_, const std::string& message)
      : std::runtime_error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + message),
        line(line_),
        column(column_) {}
  int line;
  int column;
};

// Statements are "(psi|phi)[l, u]." separated by whitespace; '%' starts a
// line comment. Duplicate constraints are dropped, source order kept.
Program parse_program(const std::string& text);

// "?(beta|alpha)[l, u]." or "?(beta|alpha)[X, Y]." with X != Y.
Query parse_query(const std::string& text);

}  // namespace plover
