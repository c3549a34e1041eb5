#include "leaklint/parser.hpp"

#include <algorithm>

#include "leaklint/lexer.hpp"

namespace leaklint {
namespace {

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  explicit Parser(std::vector<Token> t) : toks(std::move(t)) {}

  const Token& peek(size_t off = 0) const {
    size_t i = pos + off;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& get() {
    const Token& t = peek();
    if (pos < toks.size() - 1) ++pos;
    return t;
  }
  bool at_op(const char* text, size_t off = 0) const {
    const Token& t = peek(off);
    return t.kind == TokKind::Op && t.text == text;
  }
  bool at_kw(const char* text, size_t off = 0) const {
    const Token& t = peek(off);
    return t.kind == TokKind::Keyword && t.text == text;
  }
  bool accept_op(const char* text) {
    if (at_op(text)) {
      get();
      return true;
    }
    return false;
  }
  bool accept_kw(const char* text) {
    if (at_kw(text)) {
      get();
      return true;
    }
    return false;
  }
  void expect_op(const char* text, const char* what) {
    if (!accept_op(text)) fail(std::string("expected '") + text + "' " + what);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw SyntaxError(msg + " (got '" + (t.kind == TokKind::End ? "<eof>" : t.text) + "')",
                      SourceLocation{t.line, t.col});
  }
  Node make(NodeKind k) const {
    const Token& t = peek();
    return Node(k, t.line, t.col);
  }

  // --- module / suites -----------------------------------------------------

  Node parse_module() {
    Node mod(NodeKind::Module, 1, 1);
    skip_newlines();
    while (peek().kind != TokKind::End) {
      parse_statement_into(mod.kids);
      skip_newlines();
    }
    return mod;
  }

  void skip_newlines() {
    while (peek().kind == TokKind::Newline) get();
  }

  Node parse_suite() {
    Node body = make(NodeKind::Body);
    if (peek().kind == TokKind::Newline) {
      get();
      skip_newlines();
      if (peek().kind != TokKind::Indent) fail("expected an indented block");
      get();
      skip_newlines();
      while (peek().kind != TokKind::Dedent && peek().kind != TokKind::End) {
        parse_statement_into(body.kids);
        skip_newlines();
      }
      if (peek().kind == TokKind::Dedent) get();
    } else {
      // Inline suite: one or more simple statements on the header line.
      parse_simple_statement_line(body.kids);
    }
    return body;
  }

  // --- statements -----------------------------------------------------------

  void parse_statement_into(std::vector<Node>& out) {
    if (peek().kind == TokKind::Indent) fail("unexpected indent");
    if (peek().kind == TokKind::Keyword) {
      const std::string& kw = peek().text;
      if (kw == "if") { out.push_back(parse_if()); return; }
      if (kw == "while") { out.push_back(parse_while()); return; }
      if (kw == "for") { out.push_back(parse_for()); return; }
      if (kw == "def") { out.push_back(parse_def(false)); return; }
      if (kw == "class") { out.push_back(parse_class()); return; }
      if (kw == "with") { out.push_back(parse_with()); return; }
      if (kw == "try") { out.push_back(parse_try()); return; }
      if (kw == "async") {
        get();
        if (at_kw("def")) { out.push_back(parse_def(true)); return; }
        if (at_kw("for")) { out.push_back(parse_for()); return; }
        if (at_kw("with")) { out.push_back(parse_with()); return; }
        fail("expected 'def', 'for' or 'with' after 'async'");
      }
    }
    if (at_op("@")) {
      // Decorators: consume them, then require def/class; mark it decorated.
      while (at_op("@")) {
        get();
        parse_expression();
        if (peek().kind == TokKind::Newline) get();
        skip_newlines();
      }
      bool is_async = accept_kw("async");
      if (at_kw("def")) {
        Node fn = parse_def(is_async);
        fn.flag = true;
        out.push_back(std::move(fn));
        return;
      }
      if (at_kw("class")) {
        Node cls = parse_class();
        cls.flag = true;
        out.push_back(std::move(cls));
        return;
      }
      fail("expected 'def' or 'class' after decorator");
    }
    parse_simple_statement_line(out);
  }

  void parse_simple_statement_line(std::vector<Node>& out) {
    for (;;) {
      out.push_back(parse_simple_statement());
      if (accept_op(";")) {
        if (peek().kind == TokKind::Newline || peek().kind == TokKind::End) break;
        continue;
      }
      break;
    }
    if (peek().kind == TokKind::Newline) {
      get();
    } else if (peek().kind != TokKind::End && peek().kind != TokKind::Dedent) {
      fail("expected end of statement");
    }
  }

  Node parse_simple_statement() {
    if (peek().kind == TokKind::Keyword) {
      const std::string& kw = peek().text;
      if (kw == "pass") { Node n = make(NodeKind::Pass); get(); return n; }
      if (kw == "break") { Node n = make(NodeKind::Break); get(); return n; }
      if (kw == "continue") { Node n = make(NodeKind::Continue); get(); return n; }
      if (kw == "return") return parse_return();
      if (kw == "raise") return parse_raise();
      if (kw == "import") return parse_import();
      if (kw == "from") return parse_from_import();
      if (kw == "global" || kw == "nonlocal") return parse_scope_decl();
      if (kw == "assert") return parse_assert();
      if (kw == "del") return parse_del();
      if (kw == "yield") {
        Node stmt = make(NodeKind::ExprStmt);
        stmt.kids.push_back(parse_yield());
        return stmt;
      }
    }
    return parse_expr_statement();
  }

  Node parse_return() {
    Node n = make(NodeKind::Return);
    get();
    if (peek().kind != TokKind::Newline && peek().kind != TokKind::End &&
        !at_op(";") && peek().kind != TokKind::Dedent) {
      n.kids.push_back(parse_expr_list());
    }
    return n;
  }

  Node parse_raise() {
    Node n = make(NodeKind::Raise);
    get();
    if (peek().kind != TokKind::Newline && peek().kind != TokKind::End && !at_op(";")) {
      n.kids.push_back(parse_expression());
      if (accept_kw("from")) n.kids.push_back(parse_expression());
    }
    return n;
  }

  Node parse_import() {
    Node n = make(NodeKind::Import);
    get();
    for (;;) {
      Node alias = make(NodeKind::Alias);
      alias.text = parse_dotted_name();
      if (accept_kw("as")) alias.str2 = expect_name("import alias");
      n.kids.push_back(std::move(alias));
      if (!accept_op(",")) break;
    }
    return n;
  }

  Node parse_from_import() {
    Node n = make(NodeKind::ImportFrom);
    get();
    std::string module;
    while (at_op(".") || at_op("...")) module += get().text;
    if (peek().kind == TokKind::Name) module += parse_dotted_name();
    n.text = module;
    if (!accept_kw("import")) fail("expected 'import'");
    if (accept_op("*")) {
      Node alias = make(NodeKind::Alias);
      alias.text = "*";
      n.kids.push_back(std::move(alias));
      return n;
    }
    bool parens = accept_op("(");
    if (parens) skip_newlines();
    for (;;) {
      Node alias = make(NodeKind::Alias);
      alias.text = expect_name("imported name");
      if (accept_kw("as")) alias.str2 = expect_name("import alias");
      n.kids.push_back(std::move(alias));
      if (parens) skip_newlines();
      if (!accept_op(",")) break;
      if (parens) skip_newlines();
      if (parens && at_op(")")) break;
    }
    if (parens) {
      skip_newlines();
      expect_op(")", "to close import list");
    }
    return n;
  }

  Node parse_scope_decl() {
    Node n = make(at_kw("global") ? NodeKind::Global : NodeKind::Nonlocal);
    get();
    std::string names = expect_name("identifier");
    while (accept_op(",")) names += "," + expect_name("identifier");
    n.text = names;
    return n;
  }

  Node parse_assert() {
    Node n = make(NodeKind::Assert);
    get();
    n.kids.push_back(parse_expression());
    if (accept_op(",")) n.kids.push_back(parse_expression());
    return n;
  }

  Node parse_del() {
    Node n = make(NodeKind::Delete);
    get();
    n.kids.push_back(parse_expr_list());
    return n;
  }

  Node parse_expr_statement() {
    Node first = parse_expr_list();
    if (at_op("=")) {
      Node assign(NodeKind::Assign, first.line, first.col);
      assign.kids.push_back(std::move(first));
      while (accept_op("=")) {
        if (at_kw("yield")) {
          assign.kids.push_back(parse_yield());
          break;
        }
        assign.kids.push_back(parse_expr_list());
      }
      return assign;
    }
    static const char* aug_ops[] = {"+=", "-=", "*=", "/=", "//=", "%=",
                                    "**=", ">>=", "<<=", "&=", "|=", "^=", "@="};
    for (const char* op : aug_ops) {
      if (at_op(op)) {
        get();
        Node aug(NodeKind::AugAssign, first.line, first.col);
        aug.text = std::string(op).substr(0, std::string(op).size() - 1);
        aug.kids.push_back(std::move(first));
        aug.kids.push_back(parse_expr_list());
        return aug;
      }
    }
    if (at_op(":")) {
      get();
      Node ann(NodeKind::AnnAssign, first.line, first.col);
      ann.kids.push_back(std::move(first));
      ann.kids.push_back(parse_expression());
      if (accept_op("=")) ann.kids.push_back(parse_expr_list());
      return ann;
    }
    Node stmt(NodeKind::ExprStmt, first.line, first.col);
    stmt.kids.push_back(std::move(first));
    return stmt;
  }

  Node parse_if() {
    Node n = make(NodeKind::If);
    get();
    n.kids.push_back(parse_expression());
    expect_op(":", "after condition");
    n.kids.push_back(parse_suite());
    Node orelse = make(NodeKind::Body);
    skip_newlines_before_kw();
    if (at_kw("elif")) {
      orelse.kids.push_back(parse_if_from_elif());
    } else if (at_kw("else")) {
      get();
      expect_op(":", "after else");
      orelse = parse_suite();
    }
    n.kids.push_back(std::move(orelse));
    return n;
  }

  // `elif` behaves exactly like a nested if/else.
  Node parse_if_from_elif() {
    Node n = make(NodeKind::If);
    get();
    n.kids.push_back(parse_expression());
    expect_op(":", "after condition");
    n.kids.push_back(parse_suite());
    Node orelse = make(NodeKind::Body);
    skip_newlines_before_kw();
    if (at_kw("elif")) {
      orelse.kids.push_back(parse_if_from_elif());
    } else if (at_kw("else")) {
      get();
      expect_op(":", "after else");
      orelse = parse_suite();
    }
    n.kids.push_back(std::move(orelse));
    return n;
  }

  // Dedent tokens separate a suite from a trailing elif/else/except at the
  // same level; they have already been consumed by parse_suite, so nothing
  // to do here. Newlines between suites were consumed too.
  void skip_newlines_before_kw() {}

  Node parse_while() {
    Node n = make(NodeKind::While);
    get();
    n.kids.push_back(parse_expression());
    expect_op(":", "after condition");
    n.kids.push_back(parse_suite());
    Node orelse = make(NodeKind::Body);
    if (at_kw("else")) {
      get();
      expect_op(":", "after else");
      orelse = parse_suite();
    }
    n.kids.push_back(std::move(orelse));
    return n;
  }

  Node parse_for() {
    Node n = make(NodeKind::For);
    get();
    n.kids.push_back(parse_target_list());
    if (!accept_kw("in")) fail("expected 'in'");
    n.kids.push_back(parse_expr_list());
    expect_op(":", "after iterable");
    n.kids.push_back(parse_suite());
    Node orelse = make(NodeKind::Body);
    if (at_kw("else")) {
      get();
      expect_op(":", "after else");
      orelse = parse_suite();
    }
    n.kids.push_back(std::move(orelse));
    return n;
  }

  Node parse_def(bool is_async) {
    Node n = make(NodeKind::FunctionDef);
    get();
    n.text = expect_name("function name");
    expect_op("(", "after function name");
    n.kids.push_back(parse_params());
    expect_op(")", "to close parameter list");
    if (accept_op("->")) parse_expression();  // return annotation, ignored
    expect_op(":", "after signature");
    n.kids.push_back(parse_suite());
    if (is_async) n.flag = true;
    return n;
  }

  Node parse_params() {
    Node params = make(NodeKind::Params);
    skip_newlines();
    while (!at_op(")") && peek().kind != TokKind::End) {
      Node p = make(NodeKind::Param);
      if (accept_op("*")) {
        if (peek().kind == TokKind::Name) p.text = "*" + get().text;
        else p.text = "*";  // bare star separator
      } else if (accept_op("**")) {
        p.text = "**" + expect_name("parameter name");
      } else if (accept_op("/")) {
        p.text = "/";
      } else {
        p.text = expect_name("parameter name");
        if (accept_op(":")) parse_expression();  // annotation, ignored
        if (accept_op("=")) {
          p.flag = true;
          p.kids.push_back(parse_expression());
        }
      }
      params.kids.push_back(std::move(p));
      skip_newlines();
      if (!accept_op(",")) break;
      skip_newlines();
    }
    return params;
  }

  Node parse_class() {
    Node n = make(NodeKind::ClassDef);
    get();
    n.text = expect_name("class name");
    if (accept_op("(")) {
      skip_newlines();
      while (!at_op(")") && peek().kind != TokKind::End) {
        parse_argument();
        skip_newlines();
        if (!accept_op(",")) break;
        skip_newlines();
      }
      expect_op(")", "to close base list");
    }
    expect_op(":", "after class header");
    n.kids.push_back(parse_suite());
    return n;
  }

  Node parse_with() {
    Node n = make(NodeKind::With);
    get();
    bool parens = accept_op("(");
    for (;;) {
      Node item = make(NodeKind::WithItem);
      item.kids.push_back(parse_expression());
      if (accept_kw("as")) item.kids.push_back(parse_target());
      n.kids.push_back(std::move(item));
      if (!accept_op(",")) break;
    }
    if (parens) expect_op(")", "to close with items");
    expect_op(":", "after with items");
    n.kids.push_back(parse_suite());
    return n;
  }

  Node parse_try() {
    Node n = make(NodeKind::Try);
    get();
    expect_op(":", "after try");
    n.kids.push_back(parse_suite());
    std::vector<Node> handlers;
    while (at_kw("except")) {
      Node h = make(NodeKind::Except);
      get();
      accept_op("*");  // exception groups
      if (!at_op(":")) {
        h.kids.push_back(parse_expression());
        if (accept_kw("as")) h.text = expect_name("exception name");
      }
      expect_op(":", "after except clause");
      h.kids.push_back(parse_suite());
      handlers.push_back(std::move(h));
    }
    Node orelse = make(NodeKind::Body);
    if (at_kw("else")) {
      get();
      expect_op(":", "after else");
      orelse = parse_suite();
    }
    Node fin = make(NodeKind::Body);
    if (at_kw("finally")) {
      get();
      expect_op(":", "after finally");
      fin = parse_suite();
    }
    if (handlers.empty() && fin.kids.empty()) fail("expected 'except' or 'finally'");
    for (Node& h : handlers) n.kids.push_back(std::move(h));
    n.kids.push_back(std::move(orelse));
    n.kids.push_back(std::move(fin));
    return n;
  }

  std::string parse_dotted_name() {
    std::string name = expect_name("module name");
    while (at_op(".") && peek(1).kind == TokKind::Name) {
      get();
      name += "." + get().text;
    }
    return name;
  }

  std::string expect_name(const char* what) {
    if (peek().kind != TokKind::Name) fail(std::string("expected ") + what);
    return get().text;
  }

  // --- targets ---------------------------------------------------------------

  Node parse_target() { return parse_or_expr_chain(); }

  Node parse_target_list() {
    Node first = parse_target();
    if (!at_op(",")) return first;
    Node tuple(NodeKind::TupleLit, first.line, first.col);
    tuple.kids.push_back(std::move(first));
    while (accept_op(",")) {
      if (at_kw("in") || at_op("=") || at_op(":") || peek().kind == TokKind::Newline) break;
      tuple.kids.push_back(parse_target());
    }
    return tuple;
  }

  // --- expressions -----------------------------------------------------------

  // expr_list: expression (',' expression)* — produces a TupleLit when a
  // comma is present (unparenthesized tuples on either side of '=').
  Node parse_expr_list() {
    Node first = parse_expression();
    if (!at_op(",")) return first;
    Node tuple(NodeKind::TupleLit, first.line, first.col);
    tuple.kids.push_back(std::move(first));
    while (accept_op(",")) {
      if (peek().kind == TokKind::Newline || peek().kind == TokKind::End ||
          at_op("=") || at_op(")") || at_op("]") || at_op("}") || at_op(":") ||
          at_op(";") || peek().kind == TokKind::Dedent) {
        break;
      }
      tuple.kids.push_back(parse_expression());
    }
    return tuple;
  }

  Node parse_expression() {
    if (at_kw("lambda")) return parse_lambda();
    Node body = parse_ternary_base();
    if (at_kw("if")) {
      Node n(NodeKind::IfExp, body.line, body.col);
      get();
      Node cond = parse_ternary_base();
      if (!accept_kw("else")) fail("expected 'else' in conditional expression");
      Node orelse = parse_expression();
      n.kids.push_back(std::move(body));
      n.kids.push_back(std::move(cond));
      n.kids.push_back(std::move(orelse));
      return n;
    }
    return body;
  }

  Node parse_ternary_base() {
    if (at_kw("lambda")) return parse_lambda();
    return parse_or();
  }

  Node parse_lambda() {
    Node n = make(NodeKind::Lambda);
    get();
    Node params = make(NodeKind::Params);
    while (!at_op(":") && peek().kind != TokKind::End &&
           peek().kind != TokKind::Newline) {
      Node p = make(NodeKind::Param);
      if (accept_op("*")) {
        p.text = peek().kind == TokKind::Name ? "*" + get().text : "*";
      } else if (accept_op("**")) {
        p.text = "**" + expect_name("parameter name");
      } else {
        p.text = expect_name("parameter name");
        if (accept_op("=")) {
          p.flag = true;
          p.kids.push_back(parse_expression());
        }
      }
      params.kids.push_back(std::move(p));
      if (!accept_op(",")) break;
    }
    expect_op(":", "after lambda parameters");
    n.kids.push_back(std::move(params));
    n.kids.push_back(parse_expression());
    return n;
  }

  Node parse_or() {
    Node left = parse_and();
    if (!at_kw("or")) return left;
    Node n(NodeKind::BoolOpExpr, left.line, left.col);
    n.text = "or";
    n.kids.push_back(std::move(left));
    while (accept_kw("or")) n.kids.push_back(parse_and());
    return n;
  }

  Node parse_and() {
    Node left = parse_not();
    if (!at_kw("and")) return left;
    Node n(NodeKind::BoolOpExpr, left.line, left.col);
    n.text = "and";
    n.kids.push_back(std::move(left));
    while (accept_kw("and")) n.kids.push_back(parse_not());
    return n;
  }

  Node parse_not() {
    if (at_kw("not")) {
      Node n = make(NodeKind::UnaryOp);
      n.text = "not";
      get();
      n.kids.push_back(parse_not());
      return n;
    }
    return parse_comparison();
  }

  Node parse_comparison() {
    Node left = parse_or_expr_chain();
    std::vector<std::string> ops;
    std::vector<Node> rights;
    for (;;) {
      std::string op;
      if (at_op("<") || at_op(">") || at_op("==") || at_op("!=") || at_op("<=") ||
          at_op(">=")) {
        op = get().text;
      } else if (at_kw("in")) {
        get();
        op = "in";
      } else if (at_kw("not") && at_kw("in", 1)) {
        get();
        get();
        op = "not in";
      } else if (at_kw("is")) {
        get();
        op = accept_kw("not") ? "is not" : "is";
      } else {
        break;
      }
      ops.push_back(op);
      rights.push_back(parse_or_expr_chain());
    }
    if (ops.empty()) return left;
    Node n(NodeKind::Compare, left.line, left.col);
    std::string joined;
    for (size_t i = 0; i < ops.size(); ++i) {
      if (i) joined += ",";
      joined += ops[i];
    }
    n.text = joined;
    n.kids.push_back(std::move(left));
    for (Node& r : rights) n.kids.push_back(std::move(r));
    return n;
  }

  Node parse_or_expr_chain() { return parse_binary(0); }

  struct Level {
    const char* ops[5];
  };

  Node parse_binary(int level) {
    static const Level levels[] = {
        {{"|", nullptr}}, {{"^", nullptr}}, {{"&", nullptr}},
        {{"<<", ">>", nullptr}}, {{"+", "-", nullptr}},
        {{"*", "/", "//", "%", "@"}},
    };
    constexpr int kNumLevels = 6;
    if (level >= kNumLevels) return parse_unary();
    Node left = parse_binary(level + 1);
    for (;;) {
      const char* matched = nullptr;
      for (const char* op : levels[level].ops) {
        if (op == nullptr) break;
        if (at_op(op)) {
          matched = op;
          break;
        }
      }
      if (!matched) return left;
      get();
      Node n(NodeKind::BinOp, left.line, left.col);
      n.text = matched;
      n.kids.push_back(std::move(left));
      n.kids.push_back(parse_binary(level + 1));
      left = std::move(n);
    }
  }

  Node parse_unary() {
    if (at_op("+") || at_op("-") || at_op("~")) {
      Node n = make(NodeKind::UnaryOp);
      n.text = get().text;
      n.kids.push_back(parse_unary());
      return n;
    }
    return parse_power();
  }

  Node parse_power() {
    Node base = parse_postfix();
    if (at_op("**")) {
      get();
      Node n(NodeKind::BinOp, base.line, base.col);
      n.text = "**";
      n.kids.push_back(std::move(base));
      n.kids.push_back(parse_unary());  // right associative
      return n;
    }
    return base;
  }

  Node parse_postfix() {
    Node expr = parse_atom();
    for (;;) {
      if (at_op("(")) {
        Node call(NodeKind::Call, expr.line, peek().line == expr.line ? expr.col : peek().col);
        call.line = peek().line;
        get();
        call.kids.push_back(std::move(expr));
        skip_newlines();
        while (!at_op(")") && peek().kind != TokKind::End) {
          call.kids.push_back(parse_argument());
          skip_newlines();
          if (!accept_op(",")) break;
          skip_newlines();
        }
        expect_op(")", "to close call");
        expr = std::move(call);
      } else if (at_op(".")) {
        get();
        Node attr(NodeKind::Attribute, peek().line, peek().col);
        attr.text = expect_name("attribute name");
        attr.kids.push_back(std::move(expr));
        expr = std::move(attr);
      } else if (at_op("[")) {
        Node sub(NodeKind::Subscript, peek().line, peek().col);
        get();
        sub.kids.push_back(std::move(expr));
        sub.kids.push_back(parse_subscript_index());
        expect_op("]", "to close subscript");
        expr = std::move(sub);
      } else {
        return expr;
      }
    }
  }

  Node parse_subscript_index() {
    // slice | expression | tuple of those
    Node first = parse_slice_item();
    if (!at_op(",")) return first;
    Node tuple(NodeKind::TupleLit, first.line, first.col);
    tuple.kids.push_back(std::move(first));
    while (accept_op(",")) {
      if (at_op("]")) break;
      tuple.kids.push_back(parse_slice_item());
    }
    return tuple;
  }

  Node parse_slice_item() {
    Node lower = make(NodeKind::Nop);
    if (!at_op(":")) {
      if (at_op("]") || at_op(",")) return lower;
      lower = parse_expression();
      if (!at_op(":")) return lower;  // plain index
    }
    Node slice(NodeKind::SliceExpr, peek().line, peek().col);
    get();  // ':'
    Node upper = make(NodeKind::Nop);
    if (!at_op("]") && !at_op(",") && !at_op(":")) upper = parse_expression();
    Node step = make(NodeKind::Nop);
    if (accept_op(":")) {
      if (!at_op("]") && !at_op(",")) step = parse_expression();
    }
    slice.kids.push_back(std::move(lower));
    slice.kids.push_back(std::move(upper));
    slice.kids.push_back(std::move(step));
    return slice;
  }

  Node parse_argument() {
    if (accept_op("*")) {
      Node n = make(NodeKind::Starred);
      n.kids.push_back(parse_expression());
      return n;
    }
    if (accept_op("**")) {
      Node n = make(NodeKind::DoubleStarred);
      n.kids.push_back(parse_expression());
      return n;
    }
    if (peek().kind == TokKind::Name && at_op("=", 1)) {
      Node kw = make(NodeKind::Keyword);
      kw.text = get().text;
      get();  // '='
      kw.kids.push_back(parse_expression());
      return kw;
    }
    Node expr = parse_expression();
    if (at_kw("for")) {
      // Generator expression argument: f(x for x in xs)
      Node comp(NodeKind::GenExp, expr.line, expr.col);
      comp.kids.push_back(std::move(expr));
      while (at_kw("for") || at_kw("async")) comp.kids.push_back(parse_comp_for());
      return comp;
    }
    return expr;
  }

  Node parse_comp_for() {
    accept_kw("async");
    if (!accept_kw("for")) fail("expected 'for' in comprehension");
    Node comp(NodeKind::CompFor, peek().line, peek().col);
    comp.kids.push_back(parse_target_list());
    if (!accept_kw("in")) fail("expected 'in' in comprehension");
    comp.kids.push_back(parse_ternary_base());
    while (at_kw("if")) {
      get();
      comp.kids.push_back(parse_ternary_base());
    }
    return comp;
  }

  Node parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case TokKind::Name: {
        Node n = make(NodeKind::Name);
        n.text = get().text;
        if (at_op(":=")) {
          get();
          Node walrus(NodeKind::NamedExpr, n.line, n.col);
          walrus.kids.push_back(std::move(n));
          walrus.kids.push_back(parse_expression());
          return walrus;
        }
        return n;
      }
      case TokKind::Int: {
        Node n = make(NodeKind::IntLit);
        n.text = get().text;
        return n;
      }
      case TokKind::Float: {
        Node n = make(NodeKind::FloatLit);
        n.text = get().text;
        return n;
      }
      case TokKind::Str:
      case TokKind::FStr: {
        Node n = make(NodeKind::StrLit);
        n.text = get().text;
        // Adjacent string literals concatenate.
        while (peek().kind == TokKind::Str || peek().kind == TokKind::FStr) {
          n.text += get().text;
        }
        return n;
      }
      case TokKind::Keyword: {
        if (t.text == "True" || t.text == "False") {
          Node n = make(NodeKind::BoolLit);
          n.text = get().text;
          return n;
        }
        if (t.text == "None") {
          Node n = make(NodeKind::NoneLit);
          get();
          return n;
        }
        if (t.text == "lambda") return parse_lambda();
        if (t.text == "not") return parse_not();
        if (t.text == "await") {
          Node n = make(NodeKind::Await);
          get();
          n.kids.push_back(parse_unary());
          return n;
        }
        if (t.text == "yield") return parse_yield();
        fail("unexpected keyword '" + t.text + "'");
      }
      case TokKind::Op: {
        if (t.text == "(") return parse_paren();
        if (t.text == "[") return parse_list();
        if (t.text == "{") return parse_dict_or_set();
        if (t.text == "...") {
          Node n = make(NodeKind::EllipsisLit);
          get();
          return n;
        }
        fail("unexpected token '" + t.text + "'");
      }
      default:
        fail("unexpected token");
    }
  }

  Node parse_yield() {
    Node n = make(NodeKind::Yield);
    get();
    if (accept_kw("from")) {
      n.kind = NodeKind::YieldFrom;
      n.kids.push_back(parse_expression());
      return n;
    }
    if (peek().kind != TokKind::Newline && peek().kind != TokKind::End &&
        !at_op(")") && !at_op("]") && !at_op("}") && !at_op(",") && !at_op(";")) {
      n.kids.push_back(parse_expr_list());
    }
    return n;
  }

  Node parse_paren() {
    Node open = make(NodeKind::TupleLit);
    get();
    skip_newlines();
    if (at_op(")")) {
      get();
      return open;  // empty tuple
    }
    Node first = parse_expression();
    skip_newlines();
    if (at_kw("for")) {
      Node comp(NodeKind::GenExp, first.line, first.col);
      comp.kids.push_back(std::move(first));
      while (at_kw("for") || at_kw("async")) comp.kids.push_back(parse_comp_for());
      expect_op(")", "to close generator");
      return comp;
    }
    if (at_op(",")) {
      open.kids.push_back(std::move(first));
      while (accept_op(",")) {
        skip_newlines();
        if (at_op(")")) break;
        if (accept_op("*")) {
          Node st = make(NodeKind::Starred);
          st.kids.push_back(parse_expression());
          open.kids.push_back(std::move(st));
        } else {
          open.kids.push_back(parse_expression());
        }
        skip_newlines();
      }
      expect_op(")", "to close tuple");
      return open;
    }
    expect_op(")", "to close parenthesis");
    return first;  // parenthesized expression
  }

  Node parse_list() {
    Node n = make(NodeKind::ListLit);
    get();
    skip_newlines();
    if (at_op("]")) {
      get();
      return n;
    }
    Node first = accept_op("*") ? starred(parse_expression()) : parse_expression();
    skip_newlines();
    if (at_kw("for")) {
      Node comp(NodeKind::ListComp, first.line, first.col);
      comp.kids.push_back(std::move(first));
      while (at_kw("for") || at_kw("async")) comp.kids.push_back(parse_comp_for());
      expect_op("]", "to close list comprehension");
      return comp;
    }
    n.kids.push_back(std::move(first));
    while (accept_op(",")) {
      skip_newlines();
      if (at_op("]")) break;
      n.kids.push_back(accept_op("*") ? starred(parse_expression()) : parse_expression());
      skip_newlines();
    }
    expect_op("]", "to close list");
    return n;
  }

  Node starred(Node value) {
    Node st(NodeKind::Starred, value.line, value.col);
    st.kids.push_back(std::move(value));
    return st;
  }

  Node parse_dict_or_set() {
    Node n = make(NodeKind::DictLit);
    get();
    skip_newlines();
    if (at_op("}")) {
      get();
      return n;  // empty dict
    }
    if (accept_op("**")) {
      Node kv = make(NodeKind::DoubleStarred);
      kv.kids.push_back(parse_expression());
      n.kids.push_back(Node(NodeKind::Nop));
      n.kids.push_back(std::move(kv));
    } else {
      Node first = parse_expression();
      skip_newlines();
      if (accept_op(":")) {
        Node value = parse_expression();
        skip_newlines();
        if (at_kw("for")) {
          Node comp(NodeKind::DictComp, first.line, first.col);
          comp.kids.push_back(std::move(first));
          comp.kids.push_back(std::move(value));
          while (at_kw("for") || at_kw("async")) comp.kids.push_back(parse_comp_for());
          expect_op("}", "to close dict comprehension");
          return comp;
        }
        n.kids.push_back(std::move(first));
        n.kids.push_back(std::move(value));
      } else {
        // set literal or set comprehension
        if (at_kw("for")) {
          Node comp(NodeKind::SetComp, first.line, first.col);
          comp.kids.push_back(std::move(first));
          while (at_kw("for") || at_kw("async")) comp.kids.push_back(parse_comp_for());
          expect_op("}", "to close set comprehension");
          return comp;
        }
        n.kind = NodeKind::SetLit;
        n.kids.push_back(std::move(first));
        while (accept_op(",")) {
          skip_newlines();
          if (at_op("}")) break;
          n.kids.push_back(parse_expression());
          skip_newlines();
        }
        expect_op("}", "to close set");
        return n;
      }
    }
    while (accept_op(",")) {
      skip_newlines();
      if (at_op("}")) break;
      if (accept_op("**")) {
        Node kv = make(NodeKind::DoubleStarred);
        kv.kids.push_back(parse_expression());
        n.kids.push_back(Node(NodeKind::Nop));
        n.kids.push_back(std::move(kv));
      } else {
        Node key = parse_expression();
        expect_op(":", "in dict literal");
        Node value = parse_expression();
        n.kids.push_back(std::move(key));
        n.kids.push_back(std::move(value));
      }
      skip_newlines();
    }
    expect_op("}", "to close dict");
    return n;
  }
};

}  // namespace

Node parse(const SourceUnit& unit) {
  Parser parser(tokenize(unit.code));
  return parser.parse_module();
}

Node parse_string(const std::string& code) {
  std::string text = code;
  if (text.empty() || text.back() != '\n') text += '\n';
  Parser parser(tokenize(text));
  return parser.parse_module();
}

}  // namespace leaklint
