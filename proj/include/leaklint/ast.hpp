// Compact value-semantic AST for the analyzed scripting language.
//
// Child conventions by kind (children live in `kids`, in order):
//   Module        stmts...
//   Body          stmts...                        (suite grouping)
//   FunctionDef   text=name, [Params, Body]; flag set when decorated/async
//   ClassDef      text=name, [Body]
//   Params        Param...
//   Param         text=name, [default?]           (flag set when default present)
//   Return        [value?]
//   Assign        [target..., value]              (chained targets allowed)
//   AugAssign     text=op, [target, value]
//   AnnAssign     [target, annotation, value?]
//   For           [target, iter, Body, Body]      (second body = else suite)
//   While         [cond, Body, Body]
//   If            [cond, Body, Body]
//   With          [WithItem..., Body]
//   WithItem      [ctx, target?]
//   Try           [Body, Except..., Body, Body]   (else, finally)
//   Except        [type?, Body]  text=bound name or ""
//   Raise         [exc?, cause?]
//   Import        Alias...
//   ImportFrom    text=module, Alias...
//   Alias         text=name, flag+text2 via kids empty; alias stored in str2
//   Global/Nonlocal  text=comma-joined names
//   ExprStmt      [expr]
//   Assert        [test, msg?]
//   Delete        [target...]
//   Pass/Break/Continue/Nop   no children
//
//   Name          text=identifier
//   IntLit/FloatLit/StrLit  text=lexeme (StrLit text is the cooked value)
//   BoolLit       text="True"/"False"
//   NoneLit, EllipsisLit
//   TupleLit/ListLit/SetLit  elements...
//   DictLit       [key, value, key, value, ...]
//   Call          [callee, args...]               (args may be Keyword/Starred/DoubleStarred)
//   Keyword       text=name, [value]
//   Starred       [value]
//   DoubleStarred [value]
//   Attribute     text=attr, [object]
//   Subscript     [object, index]
//   SliceExpr     [lower, upper, step]            (absent parts are Nop)
//   BinOp         text=op, [lhs, rhs]
//   UnaryOp       text=op, [operand]
//   BoolOpExpr    text="and"/"or", operands...
//   Compare       text=comma-joined ops, [left, rights...]
//   IfExp         [body, cond, orelse]
//   Lambda        [Params, expr]
//   NamedExpr     [target(Name), value]
//   ListComp/SetComp/GenExp  [element, CompFor...]
//   DictComp      [key, value, CompFor...]
//   CompFor       [target, iter, conds...]
//   Await/Yield/YieldFrom  [value?]
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace leaklint {

enum class NodeKind : uint8_t {
  Module, Body, FunctionDef, ClassDef, Params, Param, Return,
  Assign, AugAssign, AnnAssign, For, While, If, With, WithItem,
  Try, Except, Raise, Import, ImportFrom, Alias, Global, Nonlocal,
  ExprStmt, Assert, Delete, Pass, Break, Continue, Nop,
  Name, IntLit, FloatLit, StrLit, BoolLit, NoneLit, EllipsisLit,
  TupleLit, ListLit, SetLit, DictLit, Call, Keyword, Starred, DoubleStarred,
  Attribute, Subscript, SliceExpr, BinOp, UnaryOp, BoolOpExpr, Compare,
  IfExp, Lambda, NamedExpr, ListComp, SetComp, GenExp, DictComp, CompFor,
  Await, Yield, YieldFrom,
};

struct Node {
  NodeKind kind = NodeKind::Nop;
  int line = 0;
  int col = 0;
  std::string text;
  std::string str2;  // secondary string (import alias, etc.)
  bool flag = false;
  std::vector<Node> kids;

  Node() = default;
  Node(NodeKind k, int ln = 0, int c = 0) : kind(k), line(ln), col(c) {}
};

const char* node_kind_name(NodeKind kind);

// Structural equality ignoring source positions.
bool structurally_equal(const Node& a, const Node& b);

// S-expression style dump, mostly for debugging and tests.
std::string dump_ast(const Node& node);

inline bool is_statement_kind(NodeKind k) {
  switch (k) {
    case NodeKind::FunctionDef: case NodeKind::ClassDef: case NodeKind::Return:
    case NodeKind::Assign: case NodeKind::AugAssign: case NodeKind::AnnAssign:
    case NodeKind::For: case NodeKind::While: case NodeKind::If: case NodeKind::With:
    case NodeKind::Try: case NodeKind::Raise: case NodeKind::Import:
    case NodeKind::ImportFrom: case NodeKind::Global: case NodeKind::Nonlocal:
    case NodeKind::ExprStmt: case NodeKind::Assert: case NodeKind::Delete:
    case NodeKind::Pass: case NodeKind::Break: case NodeKind::Continue:
    case NodeKind::Nop:
      return true;
    default:
      return false;
  }
}

}  // namespace leaklint
