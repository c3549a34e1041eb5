#include "leaklint/ast.hpp"

#include <sstream>

namespace leaklint {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Module: return "Module";
    case NodeKind::Body: return "Body";
    case NodeKind::FunctionDef: return "FunctionDef";
    case NodeKind::ClassDef: return "ClassDef";
    case NodeKind::Params: return "Params";
    case NodeKind::Param: return "Param";
    case NodeKind::Return: return "Return";
    case NodeKind::Assign: return "Assign";
    case NodeKind::AugAssign: return "AugAssign";
    case NodeKind::AnnAssign: return "AnnAssign";
    case NodeKind::For: return "For";
    case NodeKind::While: return "While";
    case NodeKind::If: return "If";
    case NodeKind::With: return "With";
    case NodeKind::WithItem: return "WithItem";
    case NodeKind::Try: return "Try";
    case NodeKind::Except: return "Except";
    case NodeKind::Raise: return "Raise";
    case NodeKind::Import: return "Import";
    case NodeKind::ImportFrom: return "ImportFrom";
    case NodeKind::Alias: return "Alias";
    case NodeKind::Global: return "Global";
    case NodeKind::Nonlocal: return "Nonlocal";
    case NodeKind::ExprStmt: return "ExprStmt";
    case NodeKind::Assert: return "Assert";
    case NodeKind::Delete: return "Delete";
    case NodeKind::Pass: return "Pass";
    case NodeKind::Break: return "Break";
    case NodeKind::Continue: return "Continue";
    case NodeKind::Nop: return "Nop";
    case NodeKind::Name: return "Name";
    case NodeKind::IntLit: return "IntLit";
    case NodeKind::FloatLit: return "FloatLit";
    case NodeKind::StrLit: return "StrLit";
    case NodeKind::BoolLit: return "BoolLit";
    case NodeKind::NoneLit: return "NoneLit";
    case NodeKind::EllipsisLit: return "EllipsisLit";
    case NodeKind::TupleLit: return "TupleLit";
    case NodeKind::ListLit: return "ListLit";
    case NodeKind::SetLit: return "SetLit";
    case NodeKind::DictLit: return "DictLit";
    case NodeKind::Call: return "Call";
    case NodeKind::Keyword: return "Keyword";
    case NodeKind::Starred: return "Starred";
    case NodeKind::DoubleStarred: return "DoubleStarred";
    case NodeKind::Attribute: return "Attribute";
    case NodeKind::Subscript: return "Subscript";
    case NodeKind::SliceExpr: return "SliceExpr";
    case NodeKind::BinOp: return "BinOp";
    case NodeKind::UnaryOp: return "UnaryOp";
    case NodeKind::BoolOpExpr: return "BoolOpExpr";
    case NodeKind::Compare: return "Compare";
    case NodeKind::IfExp: return "IfExp";
    case NodeKind::Lambda: return "Lambda";
    case NodeKind::NamedExpr: return "NamedExpr";
    case NodeKind::ListComp: return "ListComp";
    case NodeKind::SetComp: return "SetComp";
    case NodeKind::GenExp: return "GenExp";
    case NodeKind::DictComp: return "DictComp";
    case NodeKind::CompFor: return "CompFor";
    case NodeKind::Await: return "Await";
    case NodeKind::Yield: return "Yield";
    case NodeKind::YieldFrom: return "YieldFrom";
  }
  return "?";
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.text != b.text || a.str2 != b.str2 || a.flag != b.flag)
    return false;
  if (a.kids.size() != b.kids.size()) return false;
  for (size_t i = 0; i < a.kids.size(); ++i) {
    if (!structurally_equal(a.kids[i], b.kids[i])) return false;
  }
  return true;
}

namespace {
void dump_into(const Node& n, std::ostringstream& out) {
  out << '(' << node_kind_name(n.kind);
  if (!n.text.empty()) out << ' ' << n.text;
  for (const Node& k : n.kids) {
    out << ' ';
    dump_into(k, out);
  }
  out << ')';
}
}  // namespace

std::string dump_ast(const Node& node) {
  std::ostringstream out;
  dump_into(node, out);
  return out.str();
}

}  // namespace leaklint
