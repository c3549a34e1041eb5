// Recursive-descent parser producing the AST of leaklint/ast.hpp.
#pragma once

#include <string>

#include "leaklint/ast.hpp"
#include "leaklint/diag.hpp"
#include "leaklint/source.hpp"

namespace leaklint {

// Parses a whole source unit into a Module node.
// Throws SyntaxError carrying the first offending location.
Node parse(const SourceUnit& unit);

// Convenience for tests: parse a raw code string.
Node parse_string(const std::string& code);

}  // namespace leaklint
