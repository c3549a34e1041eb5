// Tokenizer with indentation tracking for the analyzed scripting language.
#pragma once

#include <string>
#include <vector>

#include "leaklint/diag.hpp"

namespace leaklint {

enum class TokKind : uint8_t {
  End, Newline, Indent, Dedent,
  Name, Keyword, Int, Float, Str, FStr,
  Op,  // text carries the operator/delimiter lexeme
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

// Tokenizes a whole source unit. Throws SyntaxError on lexical errors
// (unterminated strings, inconsistent dedents, stray characters).
std::vector<Token> tokenize(const std::string& code);

bool is_python_keyword(const std::string& word);

}  // namespace leaklint
