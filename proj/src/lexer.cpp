#include "leaklint/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace leaklint {
namespace {

const char* kKeywords[] = {
    "False", "None",  "True",  "and",    "as",     "assert", "async",
    "await", "break", "class", "continue", "def",  "del",    "elif",
    "else",  "except", "finally", "for",  "from",  "global", "if",
    "import", "in",   "is",    "lambda", "nonlocal", "not",  "or",
    "pass",  "raise", "return", "try",   "while",  "with",   "yield",
};

// Multi-char operators, longest first so greedy matching works.
const char* kOperators[] = {
    "**=", "//=", ">>=", "<<=", "...", "!=", ">=", "<=", "==", "->",
    ":=",  "+=",  "-=",  "*=",  "/=",  "%=", "@=", "&=", "|=", "^=",
    "**",  "//",  "<<",  ">>",  "+",   "-",  "*",  "/",  "%",  "@",
    "<",   ">",   "=",   "(",   ")",   "[",  "]",  "{",  "}",  ",",
    ":",   ".",   ";",   "&",   "|",   "^",  "~",
};

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_ident_cont(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  int col = 1;
  int paren_depth = 0;
  bool at_line_start = true;
  std::vector<int> indents{0};
  std::vector<Token> out;

  explicit Lexer(const std::string& s) : src(s) {}

  char peek(size_t off = 0) const {
    return pos + off < src.size() ? src[pos + off] : '\0';
  }
  char advance() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
  void emit(TokKind kind, std::string text, int ln, int cl) {
    out.push_back({kind, std::move(text), ln, cl});
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, SourceLocation{line, col});
  }

  void run() {
    while (pos < src.size()) {
      if (at_line_start && paren_depth == 0) {
        if (!handle_indentation()) continue;  // blank/comment line consumed
      }
      if (pos >= src.size()) break;
      char c = peek();
      if (c == '\n') {
        advance();
        if (paren_depth == 0) {
          emit(TokKind::Newline, "", line - 1, col);
          at_line_start = true;
        }
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
        advance();
        continue;
      }
      if (c == '#') {
        while (pos < src.size() && peek() != '\n') advance();
        continue;
      }
      if (c == '\\' && peek(1) == '\n') {
        advance();
        advance();
        continue;
      }
      if (c == '\\' && peek(1) == '\r' && peek(2) == '\n') {
        advance();
        advance();
        advance();
        continue;
      }
      at_line_start = false;
      if (is_ident_start(static_cast<unsigned char>(c))) {
        lex_name_or_string_prefix();
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        lex_number();
      } else if (c == '"' || c == '\'') {
        lex_string("");
      } else {
        lex_operator();
      }
    }
    // Close any open block structure at EOF.
    if (!out.empty() && out.back().kind != TokKind::Newline) {
      emit(TokKind::Newline, "", line, col);
    }
    while (indents.size() > 1) {
      indents.pop_back();
      emit(TokKind::Dedent, "", line, col);
    }
    emit(TokKind::End, "", line, col);
  }

  // Returns false when the whole line was blank or comment-only.
  bool handle_indentation() {
    int width = 0;
    size_t scan = pos;
    while (scan < src.size()) {
      char c = src[scan];
      if (c == ' ') {
        ++width;
      } else if (c == '\t') {
        width += 8 - (width % 8);
      } else if (c == '\f' || c == '\r') {
        // ignore
      } else {
        break;
      }
      ++scan;
    }
    if (scan >= src.size()) {
      pos = scan;
      return false;
    }
    char first = src[scan];
    if (first == '\n' || first == '#') {
      // Skip blank and comment-only lines without indentation effects.
      while (pos < src.size() && peek() != '\n') advance();
      if (pos < src.size()) advance();
      return false;
    }
    while (pos < scan) advance();
    at_line_start = false;
    if (width > indents.back()) {
      indents.push_back(width);
      emit(TokKind::Indent, "", line, col);
    } else {
      while (width < indents.back()) {
        indents.pop_back();
        emit(TokKind::Dedent, "", line, col);
      }
      if (width != indents.back()) fail("inconsistent indentation");
    }
    return true;
  }

  void lex_name_or_string_prefix() {
    int ln = line, cl = col;
    size_t start = pos;
    while (pos < src.size() && is_ident_cont(static_cast<unsigned char>(peek()))) advance();
    std::string word = src.substr(start, pos - start);
    // String prefixes: r, b, u, f and two-letter combinations.
    if (word.size() <= 2 && (peek() == '"' || peek() == '\'')) {
      std::string low;
      for (char c : word) low.push_back(static_cast<char>(std::tolower(c)));
      if (low.find_first_not_of("rbuf") == std::string::npos) {
        lex_string(low);
        return;
      }
    }
    if (is_python_keyword(word)) {
      emit(TokKind::Keyword, std::move(word), ln, cl);
    } else {
      emit(TokKind::Name, std::move(word), ln, cl);
    }
  }

  void lex_number() {
    int ln = line, cl = col;
    size_t start = pos;
    bool is_float = false;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'o' ||
                          peek(1) == 'O' || peek(1) == 'b' || peek(1) == 'B')) {
      advance();
      advance();
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        is_float = true;
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      } else if (peek() == '.' && !is_ident_start(static_cast<unsigned char>(peek(1))) &&
                 peek(1) != '.') {
        is_float = true;
        advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        size_t save = pos;
        advance();
        if (peek() == '+' || peek() == '-') advance();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          is_float = true;
          while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
        } else {
          pos = save;  // not an exponent after all
        }
      }
      if (peek() == 'j' || peek() == 'J') {
        is_float = true;
        advance();
      }
    }
    emit(is_float ? TokKind::Float : TokKind::Int, src.substr(start, pos - start), ln, cl);
  }

  void lex_string(const std::string& prefix) {
    int ln = line, cl = col;
    char quote = advance();
    bool triple = false;
    if (peek() == quote && peek(1) == quote) {
      advance();
      advance();
      triple = true;
    }
    const bool raw = prefix.find('r') != std::string::npos;
    std::string value;
    for (;;) {
      if (pos >= src.size()) fail("unterminated string literal");
      char c = peek();
      if (!triple && c == '\n') fail("unterminated string literal");
      if (c == quote) {
        if (!triple) {
          advance();
          break;
        }
        if (peek(1) == quote && peek(2) == quote) {
          advance();
          advance();
          advance();
          break;
        }
        value.push_back(advance());
        continue;
      }
      if (c == '\\' && !raw) {
        advance();
        if (pos >= src.size()) fail("unterminated string literal");
        char esc = advance();
        switch (esc) {
          case 'n': value.push_back('\n'); break;
          case 't': value.push_back('\t'); break;
          case 'r': value.push_back('\r'); break;
          case '\n': break;  // line continuation inside string
          case '\\': value.push_back('\\'); break;
          case '\'': value.push_back('\''); break;
          case '"': value.push_back('"'); break;
          default:
            value.push_back('\\');
            value.push_back(esc);
        }
        continue;
      }
      if (c == '\\' && raw) {
        value.push_back(advance());
        if (pos < src.size() && peek() != '\n') value.push_back(advance());
        continue;
      }
      value.push_back(advance());
    }
    const bool is_fstr = prefix.find('f') != std::string::npos;
    emit(is_fstr ? TokKind::FStr : TokKind::Str, std::move(value), ln, cl);
  }

  void lex_operator() {
    int ln = line, cl = col;
    for (const char* op : kOperators) {
      size_t len = std::char_traits<char>::length(op);
      if (src.compare(pos, len, op) == 0) {
        for (size_t i = 0; i < len; ++i) advance();
        if (op[0] == '(' || op[0] == '[' || op[0] == '{') ++paren_depth;
        if (op[0] == ')' || op[0] == ']' || op[0] == '}') {
          if (paren_depth > 0) --paren_depth;
        }
        emit(TokKind::Op, op, ln, cl);
        return;
      }
    }
    if (peek() == '!') {
      fail("unexpected character '!'");
    }
    fail(std::string("unexpected character '") + peek() + "'");
  }
};

}  // namespace

bool is_python_keyword(const std::string& word) {
  for (const char* kw : kKeywords) {
    if (word == kw) return true;
  }
  return false;
}

std::vector<Token> tokenize(const std::string& code) {
  Lexer lexer(code);
  lexer.run();
  return lexer.out;
}

}  // namespace leaklint
