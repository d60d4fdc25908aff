#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "percemon/ast.hpp"

namespace percemon {

struct ParseError {
  SourceLoc loc;
  std::string message;
};

/// Thrown by parse(); carries every lexical error found, or the first syntax
/// error.
class ParseFailure : public std::runtime_error {
public:
  explicit ParseFailure(std::vector<ParseError> errors);

  const std::vector<ParseError> &errors() const { return errors_; }

private:
  std::vector<ParseError> errors_;
};

/// Parse specification text (with `#` line comments) into an AST that still
/// contains derived operators.
FormulaRef parse(const std::string &text);

/// Surface syntax for `f`; `parse(format(f)) == f` for every AST.
std::string format(const Formula &f);
std::string format(const SpatialTerm &t);

/// Shortest decimal text that reads back as exactly `value`.
std::string format_number(double value);

} // namespace percemon
