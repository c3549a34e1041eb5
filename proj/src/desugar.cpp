#include "leaklint/desugar.hpp"

#include <algorithm>
#include <unordered_set>

namespace leaklint {
namespace {

bool is_literal(const Node& n) {
  switch (n.kind) {
    case NodeKind::IntLit: case NodeKind::FloatLit: case NodeKind::StrLit:
    case NodeKind::BoolLit: case NodeKind::NoneLit: case NodeKind::EllipsisLit:
      return true;
    default:
      return false;
  }
}

bool is_simple(const Node& n) { return n.kind == NodeKind::Name || is_literal(n); }

// Statement-local bail-out for constructs the analysis does not model.
struct Unsupported {
  std::string what;
  int line;
};

struct Lowerer {
  std::vector<std::string> notes;
  std::unordered_map<std::string, std::string> imports;
  std::unordered_set<std::string> assigned;
  int temp_counter = 0;

  Node fresh_temp(int line) {
    Node n(NodeKind::Name, line, 0);
    n.text = "$t" + std::to_string(++temp_counter);
    n.flag = true;
    return n;
  }

  // --- prepass: import aliases and assigned names ---------------------------

  void scan(const Node& n) {
    switch (n.kind) {
      case NodeKind::Import:
        for (const Node& alias : n.kids) {
          if (!alias.str2.empty()) {
            imports[alias.str2] = alias.text;
          } else {
            std::string root = alias.text.substr(0, alias.text.find('.'));
            imports[root] = root;
          }
        }
        break;
      case NodeKind::ImportFrom:
        for (const Node& alias : n.kids) {
          if (alias.text == "*") continue;
          std::string bound = alias.str2.empty() ? alias.text : alias.str2;
          imports[bound] = n.text.empty() ? alias.text : n.text + "." + alias.text;
        }
        break;
      case NodeKind::Assign:
        for (size_t i = 0; i + 1 < n.kids.size(); ++i) collect_target_names(n.kids[i]);
        break;
      case NodeKind::AugAssign:
      case NodeKind::AnnAssign:
        if (!n.kids.empty()) collect_target_names(n.kids[0]);
        break;
      case NodeKind::For:
        if (!n.kids.empty()) collect_target_names(n.kids[0]);
        break;
      case NodeKind::With:
        for (const Node& item : n.kids) {
          if (item.kind == NodeKind::WithItem && item.kids.size() > 1)
            collect_target_names(item.kids[1]);
        }
        break;
      case NodeKind::FunctionDef:
      case NodeKind::ClassDef:
        assigned.insert(n.text);
        return;  // do not scan bodies for module-level names
      default:
        break;
    }
    for (const Node& k : n.kids) scan(k);
  }

  void collect_body_locals(const Node& n) {
    switch (n.kind) {
      case NodeKind::Assign:
        for (size_t i = 0; i + 1 < n.kids.size(); ++i) collect_target_names(n.kids[i]);
        break;
      case NodeKind::AugAssign:
      case NodeKind::AnnAssign:
        if (!n.kids.empty()) collect_target_names(n.kids[0]);
        break;
      case NodeKind::For:
        if (!n.kids.empty()) collect_target_names(n.kids[0]);
        break;
      case NodeKind::With:
        for (const Node& item : n.kids) {
          if (item.kind == NodeKind::WithItem && item.kids.size() > 1)
            collect_target_names(item.kids[1]);
        }
        break;
      case NodeKind::FunctionDef:
      case NodeKind::ClassDef:
        assigned.insert(n.text);
        return;
      default:
        break;
    }
    for (const Node& k : n.kids) collect_body_locals(k);
  }

  void collect_target_names(const Node& target) {
    if (target.kind == NodeKind::Name) {
      assigned.insert(target.text);
    } else if (target.kind == NodeKind::TupleLit || target.kind == NodeKind::ListLit ||
               target.kind == NodeKind::Starred) {
      for (const Node& k : target.kids) collect_target_names(k);
    }
  }

  // --- expression lowering ---------------------------------------------------

  Node to_simple(const Node& expr, std::vector<Node>& out) {
    if (is_simple(expr)) {
      if (expr.kind == NodeKind::Name) return expr;
      Node lit = expr;
      return emit_temp_assign(std::move(lit), out, expr.line);
    }
    Node core = to_core(expr, out);
    if (is_simple(core)) return core;
    return emit_temp_assign(std::move(core), out, expr.line);
  }

  Node emit_temp_assign(Node value, std::vector<Node>& out, int line) {
    Node temp = fresh_temp(line);
    Node assign(NodeKind::Assign, line, 0);
    assign.kids.push_back(temp);
    assign.kids.push_back(std::move(value));
    out.push_back(std::move(assign));
    return temp;
  }

  // Lowers one expression level; operands become simple.
  Node to_core(const Node& expr, std::vector<Node>& out) {
    switch (expr.kind) {
      case NodeKind::Name: {
        Node n = expr;
        n.flag = false;
        return n;
      }
      case NodeKind::IntLit: case NodeKind::FloatLit: case NodeKind::StrLit:
      case NodeKind::BoolLit: case NodeKind::NoneLit: case NodeKind::EllipsisLit:
        return expr;
      case NodeKind::UnaryOp: {
        // Fold +/- of numeric literals so constant subscripts stay constant.
        if (expr.kids.size() == 1 &&
            (expr.kids[0].kind == NodeKind::IntLit || expr.kids[0].kind == NodeKind::FloatLit) &&
            (expr.text == "-" || expr.text == "+")) {
          Node lit = expr.kids[0];
          if (expr.text == "-") lit.text = "-" + lit.text;
          lit.line = expr.line;
          return lit;
        }
        Node n(NodeKind::UnaryOp, expr.line, expr.col);
        n.text = expr.text;
        n.kids.push_back(to_simple(expr.kids[0], out));
        return n;
      }
      case NodeKind::BinOp: {
        Node n(NodeKind::BinOp, expr.line, expr.col);
        n.text = expr.text;
        n.kids.push_back(to_simple(expr.kids[0], out));
        n.kids.push_back(to_simple(expr.kids[1], out));
        return n;
      }
      case NodeKind::Compare:
      case NodeKind::BoolOpExpr: {
        Node n(expr.kind, expr.line, expr.col);
        n.text = expr.text;
        for (const Node& k : expr.kids) n.kids.push_back(to_simple(k, out));
        return n;
      }
      case NodeKind::TupleLit: case NodeKind::ListLit: case NodeKind::SetLit: {
        Node n(expr.kind, expr.line, expr.col);
        for (const Node& k : expr.kids) {
          if (k.kind == NodeKind::Starred) {
            n.kids.push_back(to_simple(k.kids[0], out));
          } else {
            n.kids.push_back(to_simple(k, out));
          }
        }
        return n;
      }
      case NodeKind::DictLit: {
        Node n(NodeKind::DictLit, expr.line, expr.col);
        for (const Node& k : expr.kids) {
          if (k.kind == NodeKind::DoubleStarred) {
            n.kids.push_back(to_simple(k.kids[0], out));
          } else if (k.kind == NodeKind::Nop) {
            continue;
          } else {
            n.kids.push_back(to_simple(k, out));
          }
        }
        return n;
      }
      case NodeKind::Attribute: {
        // Module-path attribute values (np.nan) stay as a dotted reference.
        std::string dotted = dotted_module_path(expr);
        if (!dotted.empty()) {
          Node n(NodeKind::Attribute, expr.line, expr.col);
          n.text = expr.text;
          Node mod(NodeKind::Name, expr.line, expr.col);
          mod.text = dotted.substr(0, dotted.rfind('.'));
          mod.str2 = "module";
          n.kids.push_back(std::move(mod));
          return n;
        }
        Node n(NodeKind::Attribute, expr.line, expr.col);
        n.text = expr.text;
        n.kids.push_back(to_simple(expr.kids[0], out));
        return n;
      }
      case NodeKind::Subscript: {
        Node n(NodeKind::Subscript, expr.line, expr.col);
        n.kids.push_back(to_simple(expr.kids[0], out));
        n.kids.push_back(lower_index(expr.kids[1], out));
        return n;
      }
      case NodeKind::Call:
        return lower_call(expr, out);
      case NodeKind::IfExp: {
        Node cond = to_simple(expr.kids[1], out);
        Node temp = fresh_temp(expr.line);
        Node ifstmt(NodeKind::If, expr.line, expr.col);
        ifstmt.kids.push_back(cond);
        Node then_body(NodeKind::Body, expr.line, 0);
        assign_into(temp, expr.kids[0], then_body.kids);
        Node else_body(NodeKind::Body, expr.line, 0);
        assign_into(temp, expr.kids[2], else_body.kids);
        ifstmt.kids.push_back(std::move(then_body));
        ifstmt.kids.push_back(std::move(else_body));
        out.push_back(std::move(ifstmt));
        return temp;
      }
      case NodeKind::ListComp: case NodeKind::SetComp: case NodeKind::GenExp:
        return lower_sequence_comp(expr, out);
      case NodeKind::DictComp:
        return lower_dict_comp(expr, out);
      case NodeKind::Lambda: {
        note("lambda treated as opaque value", expr.line);
        Node n(NodeKind::NoneLit, expr.line, expr.col);
        return n;
      }
      case NodeKind::Await:
        return expr.kids.empty() ? Node(NodeKind::NoneLit, expr.line, 0)
                                 : to_core(expr.kids[0], out);
      case NodeKind::NamedExpr:
        throw Unsupported{"assignment expression", expr.line};
      case NodeKind::Yield:
      case NodeKind::YieldFrom:
        throw Unsupported{"yield expression", expr.line};
      case NodeKind::Starred:
        return to_core(expr.kids[0], out);
      case NodeKind::SliceExpr:
        return lower_index(expr, out);
      default:
        throw Unsupported{std::string("expression kind ") + node_kind_name(expr.kind),
                          expr.line};
    }
  }

  void note(const std::string& what, int line) {
    notes.push_back(what + " at line " + std::to_string(line));
  }

  Node lower_index(const Node& index, std::vector<Node>& out) {
    if (is_simple(index)) return index;
    if (index.kind == NodeKind::SliceExpr) {
      Node n(NodeKind::SliceExpr, index.line, index.col);
      for (const Node& part : index.kids) {
        if (part.kind == NodeKind::Nop || is_literal(part)) {
          n.kids.push_back(part);
        } else if (part.kind == NodeKind::UnaryOp) {
          n.kids.push_back(to_core(part, out));
        } else {
          n.kids.push_back(to_simple(part, out));
        }
      }
      return n;
    }
    if (index.kind == NodeKind::TupleLit) {
      Node n(NodeKind::TupleLit, index.line, index.col);
      for (const Node& part : index.kids) n.kids.push_back(lower_index(part, out));
      return n;
    }
    return to_simple(index, out);
  }

  std::string dotted_module_path(const Node& expr) const {
    // Returns the resolved dotted path when the attribute chain is rooted in
    // an import alias or an unassigned bare name; empty otherwise.
    std::vector<const std::string*> parts;
    const Node* cur = &expr;
    while (cur->kind == NodeKind::Attribute && cur->kids.size() == 1) {
      parts.push_back(&cur->text);
      cur = &cur->kids[0];
    }
    if (cur->kind != NodeKind::Name) return "";
    const std::string& root = cur->text;
    std::string base;
    auto it = imports.find(root);
    if (it != imports.end() && !assigned.count(root)) {
      base = it->second;
    } else if (!assigned.count(root)) {
      base = root;
    } else {
      return "";
    }
    for (auto part = parts.rbegin(); part != parts.rend(); ++part) {
      base += "." + **part;
    }
    return base;
  }

  Node lower_call(const Node& call, std::vector<Node>& out) {
    Node core(NodeKind::Call, call.line, call.col);
    const Node& callee = call.kids[0];

    if (callee.kind == NodeKind::Name) {
      auto it = imports.find(callee.text);
      Node c(NodeKind::Name, callee.line, callee.col);
      if (it != imports.end() && !assigned.count(callee.text)) {
        c.text = it->second;
        c.flag = false;
      } else if (assigned.count(callee.text)) {
        c.text = callee.text;
        c.flag = true;  // call of a local variable / user function
      } else {
        c.text = callee.text;
        c.flag = false;  // unresolved library name
      }
      core.kids.push_back(std::move(c));
    } else if (callee.kind == NodeKind::Attribute) {
      std::string dotted = dotted_module_path(callee);
      if (!dotted.empty()) {
        Node c(NodeKind::Name, callee.line, callee.col);
        c.text = dotted;
        c.flag = false;
        core.kids.push_back(std::move(c));
      } else {
        Node method(NodeKind::Attribute, call.line, callee.col);
        method.text = callee.text;
        method.kids.push_back(to_simple(callee.kids[0], out));
        core.kids.push_back(std::move(method));
      }
    } else {
      // Computed callee: f()(x), handlers[i](x), ...
      Node recv = to_simple(callee, out);
      Node c(NodeKind::Name, call.line, call.col);
      c.text = recv.text;
      c.flag = true;
      core.kids.push_back(std::move(c));
    }

    for (size_t i = 1; i < call.kids.size(); ++i) {
      const Node& arg = call.kids[i];
      if (arg.kind == NodeKind::Keyword) {
        Node kw(NodeKind::Keyword, arg.line, arg.col);
        kw.text = arg.text;
        kw.kids.push_back(to_simple(arg.kids[0], out));
        core.kids.push_back(std::move(kw));
      } else if (arg.kind == NodeKind::Starred || arg.kind == NodeKind::DoubleStarred) {
        Node st(arg.kind, arg.line, arg.col);
        st.kids.push_back(to_simple(arg.kids[0], out));
        core.kids.push_back(std::move(st));
      } else {
        core.kids.push_back(to_simple(arg, out));
      }
    }
    return core;
  }

  Node lower_sequence_comp(const Node& comp, std::vector<Node>& out) {
    Node acc = fresh_temp(comp.line);
    Node alloc(NodeKind::Assign, comp.line, 0);
    alloc.kids.push_back(acc);
    alloc.kids.push_back(Node(comp.kind == NodeKind::SetComp ? NodeKind::SetLit
                                                             : NodeKind::ListLit,
                              comp.line, 0));
    out.push_back(std::move(alloc));

    std::vector<Node> innermost;
    Node append_call(NodeKind::Call, comp.line, 0);
    Node method(NodeKind::Attribute, comp.line, 0);
    method.text = comp.kind == NodeKind::SetComp ? "add" : "append";
    method.kids.push_back(acc);
    append_call.kids.push_back(std::move(method));
    {
      std::vector<Node> pre;
      Node elt = to_simple(comp.kids[0], pre);
      // element computation belongs inside the loop body
      for (Node& p : pre) innermost.push_back(std::move(p));
      append_call.kids.push_back(std::move(elt));
    }
    Node call_stmt(NodeKind::ExprStmt, comp.line, 0);
    call_stmt.kids.push_back(std::move(append_call));
    innermost.push_back(std::move(call_stmt));

    emit_comp_loops(comp, 1, std::move(innermost), out);
    return acc;
  }

  Node lower_dict_comp(const Node& comp, std::vector<Node>& out) {
    Node acc = fresh_temp(comp.line);
    Node alloc(NodeKind::Assign, comp.line, 0);
    alloc.kids.push_back(acc);
    alloc.kids.push_back(Node(NodeKind::DictLit, comp.line, 0));
    out.push_back(std::move(alloc));

    std::vector<Node> innermost;
    Node key = to_simple(comp.kids[0], innermost);
    Node value = to_simple(comp.kids[1], innermost);
    Node store(NodeKind::Assign, comp.line, 0);
    Node sub(NodeKind::Subscript, comp.line, 0);
    sub.kids.push_back(acc);
    sub.kids.push_back(std::move(key));
    store.kids.push_back(std::move(sub));
    store.kids.push_back(std::move(value));
    innermost.push_back(std::move(store));

    emit_comp_loops(comp, 2, std::move(innermost), out);
    return acc;
  }

  void emit_comp_loops(const Node& comp, size_t first_for, std::vector<Node> innermost,
                       std::vector<Node>& out) {
    // Build from the innermost generator outwards.
    std::vector<Node> body = std::move(innermost);
    for (size_t i = comp.kids.size(); i-- > first_for;) {
      const Node& gen = comp.kids[i];
      // conditions guard the body
      for (size_t c = gen.kids.size(); c-- > 2;) {
        std::vector<Node> guarded;
        Node cond = to_simple(gen.kids[c], guarded);
        Node ifstmt(NodeKind::If, gen.kids[c].line, 0);
        ifstmt.kids.push_back(std::move(cond));
        Node then_body(NodeKind::Body, gen.kids[c].line, 0);
        then_body.kids = std::move(body);
        ifstmt.kids.push_back(std::move(then_body));
        ifstmt.kids.push_back(Node(NodeKind::Body, gen.kids[c].line, 0));
        guarded.push_back(std::move(ifstmt));
        body = std::move(guarded);
      }
      body = make_for_loop(gen.kids[0], gen.kids[1], std::move(body), gen.line, out);
    }
    for (Node& stmt : body) out.push_back(std::move(stmt));
  }

  // Builds the core loop structure; returns the statements to emit.
  std::vector<Node> make_for_loop(const Node& target, const Node& iter,
                                  std::vector<Node> body_stmts, int line,
                                  std::vector<Node>& out) {
    Node iter_var = to_simple(iter, out);
    Node loop(NodeKind::For, line, 0);
    loop.kids.push_back(iter_var);
    Node body(NodeKind::Body, line, 0);

    Node item = fresh_temp(line);
    Node extract(NodeKind::Assign, line, 0);
    Node sub(NodeKind::Subscript, line, 0);
    sub.kids.push_back(iter_var);
    sub.kids.push_back(Node(NodeKind::EllipsisLit, line, 0));  // iteration marker
    extract.kids.push_back(item);
    extract.kids.push_back(std::move(sub));
    body.kids.push_back(std::move(extract));
    unpack_target(target, item, body.kids);
    for (Node& s : body_stmts) body.kids.push_back(std::move(s));
    loop.kids.push_back(std::move(body));

    std::vector<Node> result;
    result.push_back(std::move(loop));
    return result;
  }

  // --- targets ---------------------------------------------------------------

  void unpack_target(const Node& target, const Node& source_name,
                     std::vector<Node>& out) {
    if (target.kind == NodeKind::Name) {
      Node assign(NodeKind::Assign, target.line ? target.line : source_name.line, 0);
      Node t = target;
      t.flag = false;
      assign.kids.push_back(std::move(t));
      assign.kids.push_back(source_name);
      out.push_back(std::move(assign));
      return;
    }
    if (target.kind == NodeKind::TupleLit || target.kind == NodeKind::ListLit) {
      long index = 0;
      for (const Node& elem : target.kids) {
        if (elem.kind == NodeKind::Starred) {
          // a, *rest = t : rest receives a slice of the remainder
          Node slice(NodeKind::SliceExpr, elem.line, 0);
          Node lower(NodeKind::IntLit, elem.line, 0);
          lower.text = std::to_string(index);
          slice.kids.push_back(std::move(lower));
          slice.kids.push_back(Node(NodeKind::Nop, elem.line, 0));
          slice.kids.push_back(Node(NodeKind::Nop, elem.line, 0));
          Node sub(NodeKind::Subscript, elem.line, 0);
          sub.kids.push_back(source_name);
          sub.kids.push_back(std::move(slice));
          if (!elem.kids.empty() && elem.kids[0].kind == NodeKind::Name) {
            Node assign(NodeKind::Assign, elem.line, 0);
            assign.kids.push_back(elem.kids[0]);
            assign.kids.push_back(std::move(sub));
            out.push_back(std::move(assign));
          }
          ++index;
          continue;
        }
        Node idx(NodeKind::IntLit, elem.line ? elem.line : source_name.line, 0);
        idx.text = std::to_string(index++);
        Node sub(NodeKind::Subscript, idx.line, 0);
        sub.kids.push_back(source_name);
        sub.kids.push_back(std::move(idx));
        if (elem.kind == NodeKind::Name) {
          Node assign(NodeKind::Assign, idx.line, 0);
          Node t = elem;
          t.flag = false;
          assign.kids.push_back(std::move(t));
          assign.kids.push_back(std::move(sub));
          out.push_back(std::move(assign));
        } else {
          Node temp = emit_temp_assign(std::move(sub), out, idx.line);
          unpack_target(elem, temp, out);
        }
      }
      return;
    }
    if (target.kind == NodeKind::Attribute || target.kind == NodeKind::Subscript) {
      store_into(target, source_name, out);
      return;
    }
    throw Unsupported{"assignment target", target.line};
  }

  void store_into(const Node& target, const Node& value_name, std::vector<Node>& out) {
    if (target.kind == NodeKind::Attribute) {
      if (!dotted_module_path(target).empty()) {
        throw Unsupported{"store to module attribute", target.line};
      }
      Node store(NodeKind::Assign, target.line, 0);
      Node attr(NodeKind::Attribute, target.line, 0);
      attr.text = target.text;
      attr.kids.push_back(to_simple(target.kids[0], out));
      store.kids.push_back(std::move(attr));
      store.kids.push_back(value_name);
      out.push_back(std::move(store));
      return;
    }
    if (target.kind == NodeKind::Subscript) {
      Node store(NodeKind::Assign, target.line, 0);
      Node sub(NodeKind::Subscript, target.line, 0);
      sub.kids.push_back(to_simple(target.kids[0], out));
      sub.kids.push_back(lower_index(target.kids[1], out));
      store.kids.push_back(std::move(sub));
      store.kids.push_back(value_name);
      out.push_back(std::move(store));
      return;
    }
    throw Unsupported{"assignment target", target.line};
  }

  void assign_into(const Node& target_name, const Node& value, std::vector<Node>& out) {
    Node core = to_core(value, out);
    Node assign(NodeKind::Assign, value.line, 0);
    assign.kids.push_back(target_name);
    assign.kids.push_back(std::move(core));
    out.push_back(std::move(assign));
  }

  // --- statements ------------------------------------------------------------

  void lower_stmt(const Node& stmt, std::vector<Node>& out) {
    std::vector<Node> staged;
    try {
      lower_stmt_inner(stmt, staged);
    } catch (const Unsupported& u) {
      notes.push_back(u.what + " at line " + std::to_string(u.line ? u.line : stmt.line) +
                      "; statement skipped");
      Node nop(NodeKind::Nop, stmt.line, 0);
      out.push_back(std::move(nop));
      return;
    }
    for (Node& s : staged) out.push_back(std::move(s));
  }

  void lower_stmt_inner(const Node& stmt, std::vector<Node>& out) {
    switch (stmt.kind) {
      case NodeKind::Assign: {
        const Node& value = stmt.kids.back();
        if (stmt.kids.size() == 2 && stmt.kids[0].kind == NodeKind::Name) {
          Node target = stmt.kids[0];
          target.flag = false;
          Node core = to_core(value, out);
          Node assign(NodeKind::Assign, stmt.line, 0);
          assign.kids.push_back(std::move(target));
          assign.kids.push_back(std::move(core));
          out.push_back(std::move(assign));
          return;
        }
        Node source = to_simple(value, out);
        for (size_t i = 0; i + 1 < stmt.kids.size(); ++i) {
          unpack_target(stmt.kids[i], source, out);
        }
        return;
      }
      case NodeKind::AugAssign: {
        const Node& target = stmt.kids[0];
        Node value = to_simple(stmt.kids[1], out);
        Node load;
        if (target.kind == NodeKind::Name) {
          load = target;
        } else {
          Node load_expr = target;  // read current value through a temp
          load = to_simple(load_expr, out);
        }
        Node op(NodeKind::BinOp, stmt.line, 0);
        op.text = stmt.text;
        op.kids.push_back(load);
        op.kids.push_back(std::move(value));
        if (target.kind == NodeKind::Name) {
          Node assign(NodeKind::Assign, stmt.line, 0);
          Node t = target;
          t.flag = false;
          assign.kids.push_back(std::move(t));
          assign.kids.push_back(std::move(op));
          out.push_back(std::move(assign));
        } else {
          Node temp = emit_temp_assign(std::move(op), out, stmt.line);
          store_into(target, temp, out);
        }
        return;
      }
      case NodeKind::AnnAssign: {
        if (stmt.kids.size() < 3) {
          out.push_back(Node(NodeKind::Nop, stmt.line, 0));
          return;
        }
        Node lowered(NodeKind::Assign, stmt.line, 0);
        lowered.kids.push_back(stmt.kids[0]);
        lowered.kids.push_back(stmt.kids[2]);
        lower_stmt_inner(lowered, out);
        return;
      }
      case NodeKind::ExprStmt: {
        const Node& expr = stmt.kids[0];
        if (expr.kind == NodeKind::Call) {
          Node core = lower_call(expr, out);
          Node es(NodeKind::ExprStmt, stmt.line, 0);
          es.kids.push_back(std::move(core));
          out.push_back(std::move(es));
          return;
        }
        if (is_simple(expr) || expr.kind == NodeKind::StrLit) {
          out.push_back(Node(NodeKind::Nop, stmt.line, 0));
          return;
        }
        to_simple(expr, out);  // keep the flows, drop the value
        return;
      }
      case NodeKind::If: {
        Node cond = to_simple(stmt.kids[0], out);
        Node lowered(NodeKind::If, stmt.line, 0);
        lowered.kids.push_back(std::move(cond));
        lowered.kids.push_back(lower_body(stmt.kids[1]));
        lowered.kids.push_back(lower_body(stmt.kids[2]));
        out.push_back(std::move(lowered));
        return;
      }
      case NodeKind::While: {
        Node cond = to_simple(stmt.kids[0], out);
        Node lowered(NodeKind::While, stmt.line, 0);
        lowered.kids.push_back(std::move(cond));
        lowered.kids.push_back(lower_body(stmt.kids[1]));
        out.push_back(std::move(lowered));
        if (stmt.kids.size() > 2) {
          Node tail = lower_body(stmt.kids[2]);
          for (Node& s : tail.kids) out.push_back(std::move(s));
        }
        return;
      }
      case NodeKind::For: {
        if (stmt.kids.size() == 2 && stmt.kids[0].kind == NodeKind::Name) {
          // already in core form
          Node lowered(NodeKind::For, stmt.line, 0);
          lowered.kids.push_back(stmt.kids[0]);
          lowered.kids.push_back(lower_body(stmt.kids[1]));
          out.push_back(std::move(lowered));
          return;
        }
        std::vector<Node> body_stmts;
        for (const Node& s : stmt.kids[2].kids) lower_stmt(s, body_stmts);
        std::vector<Node> loop =
            make_for_loop(stmt.kids[0], stmt.kids[1], std::move(body_stmts), stmt.line, out);
        for (Node& s : loop) out.push_back(std::move(s));
        if (stmt.kids.size() > 3) {
          Node tail = lower_body(stmt.kids[3]);
          for (Node& s : tail.kids) out.push_back(std::move(s));
        }
        return;
      }
      case NodeKind::With: {
        for (const Node& item : stmt.kids) {
          if (item.kind != NodeKind::WithItem) continue;
          if (item.kids.size() > 1) {
            Node ctx = to_simple(item.kids[0], out);
            unpack_target(item.kids[1], ctx, out);
          } else {
            to_simple(item.kids[0], out);
          }
        }
        const Node& body = stmt.kids.back();
        for (const Node& s : body.kids) lower_stmt(s, out);
        return;
      }
      case NodeKind::Try: {
        Node lowered(NodeKind::Try, stmt.line, 0);
        lowered.kids.push_back(lower_body(stmt.kids[0]));
        for (size_t i = 1; i < stmt.kids.size(); ++i) {
          const Node& k = stmt.kids[i];
          if (k.kind == NodeKind::Except) {
            Node h(NodeKind::Except, k.line, 0);
            h.text = k.text;
            h.kids.push_back(lower_body(k.kids.back()));
            lowered.kids.push_back(std::move(h));
          } else {
            lowered.kids.push_back(lower_body(k));
          }
        }
        out.push_back(std::move(lowered));
        return;
      }
      case NodeKind::FunctionDef: {
        if (stmt.flag) {
          note("decorated or async function '" + stmt.text + "' not analyzed", stmt.line);
          out.push_back(Node(NodeKind::Nop, stmt.line, 0));
          return;
        }
        Node lowered(NodeKind::FunctionDef, stmt.line, 0);
        lowered.text = stmt.text;
        lowered.kids.push_back(stmt.kids[0]);  // Params as-is
        // body locals shadow imports and module names while lowering the body
        auto saved = assigned;
        for (const Node& p : stmt.kids[0].kids) {
          std::string name = p.text;
          while (!name.empty() && (name[0] == '*' || name[0] == '/')) name.erase(0, 1);
          if (!name.empty()) assigned.insert(name);
        }
        collect_body_locals(stmt.kids[1]);
        lowered.kids.push_back(lower_body(stmt.kids[1]));
        assigned = std::move(saved);
        out.push_back(std::move(lowered));
        return;
      }
      case NodeKind::ClassDef:
        note("class body '" + stmt.text + "' not analyzed", stmt.line);
        out.push_back(Node(NodeKind::Nop, stmt.line, 0));
        return;
      case NodeKind::Return: {
        Node lowered(NodeKind::Return, stmt.line, 0);
        if (!stmt.kids.empty()) lowered.kids.push_back(to_simple(stmt.kids[0], out));
        out.push_back(std::move(lowered));
        return;
      }
      case NodeKind::Import:
      case NodeKind::ImportFrom:
      case NodeKind::Global:
      case NodeKind::Nonlocal:
      case NodeKind::Assert:
      case NodeKind::Delete:
      case NodeKind::Raise:
        out.push_back(Node(NodeKind::Nop, stmt.line, 0));
        return;
      case NodeKind::Pass:
      case NodeKind::Break:
      case NodeKind::Continue:
      case NodeKind::Nop: {
        Node n(stmt.kind, stmt.line, 0);
        out.push_back(std::move(n));
        return;
      }
      default:
        throw Unsupported{std::string("statement kind ") + node_kind_name(stmt.kind),
                          stmt.line};
    }
  }

  Node lower_body(const Node& body) {
    Node out(NodeKind::Body, body.line, 0);
    for (const Node& s : body.kids) lower_stmt(s, out.kids);
    return out;
  }
};

// --- inlining -----------------------------------------------------------------

struct DefInfo {
  const Node* node = nullptr;
  bool unique = true;
};

struct Inliner {
  std::unordered_map<std::string, DefInfo> defs;
  std::vector<std::string>* notes;
  int max_depth;
  int clone_counter = 0;

  void collect_defs(const Node& module) {
    for (const Node& stmt : module.kids) {
      if (stmt.kind != NodeKind::FunctionDef) continue;
      auto [it, inserted] = defs.try_emplace(stmt.text);
      if (!inserted) {
        it->second.unique = false;
        continue;
      }
      it->second.node = &stmt;
      if (has_yield(stmt)) it->second.unique = false;
    }
  }

  static bool has_yield(const Node& n) {
    if (n.kind == NodeKind::Yield || n.kind == NodeKind::YieldFrom) return true;
    for (const Node& k : n.kids) {
      if (has_yield(k)) return true;
    }
    return false;
  }

  Node run(const Node& module) {
    collect_defs(module);
    Node out(NodeKind::Module, module.line, module.col);
    for (const Node& stmt : module.kids) expand_stmt(stmt, out.kids, max_depth);
    return out;
  }

  void expand_stmt(const Node& stmt, std::vector<Node>& out, int depth) {
    const Node* call = nullptr;
    if (stmt.kind == NodeKind::ExprStmt && stmt.kids[0].kind == NodeKind::Call) {
      call = &stmt.kids[0];
    } else if (stmt.kind == NodeKind::Assign && stmt.kids.size() == 2 &&
               stmt.kids[0].kind == NodeKind::Name &&
               stmt.kids[1].kind == NodeKind::Call) {
      call = &stmt.kids[1];
    }
    if (call != nullptr && depth > 0) {
      const Node& callee = call->kids[0];
      if (callee.kind == NodeKind::Name && callee.flag) {
        auto it = defs.find(callee.text);
        if (it != defs.end() && it->second.unique && it->second.node != nullptr) {
          if (try_inline(stmt, *call, *it->second.node, out, depth)) return;
        }
      }
    }
    // recurse into structured statements
    switch (stmt.kind) {
      case NodeKind::If: {
        Node n(NodeKind::If, stmt.line, 0);
        n.kids.push_back(stmt.kids[0]);
        n.kids.push_back(expand_body(stmt.kids[1], depth));
        n.kids.push_back(expand_body(stmt.kids[2], depth));
        out.push_back(std::move(n));
        return;
      }
      case NodeKind::While:
      case NodeKind::For: {
        Node n(stmt.kind, stmt.line, 0);
        n.kids.push_back(stmt.kids[0]);
        n.kids.push_back(expand_body(stmt.kids[1], depth));
        out.push_back(std::move(n));
        return;
      }
      case NodeKind::Try: {
        Node n(NodeKind::Try, stmt.line, 0);
        for (const Node& k : stmt.kids) {
          if (k.kind == NodeKind::Except) {
            Node h(NodeKind::Except, k.line, 0);
            h.text = k.text;
            h.kids.push_back(expand_body(k.kids.back(), depth));
            n.kids.push_back(std::move(h));
          } else {
            n.kids.push_back(expand_body(k, depth));
          }
        }
        out.push_back(std::move(n));
        return;
      }
      default:
        out.push_back(stmt);
        return;
    }
  }

  Node expand_body(const Node& body, int depth) {
    Node out(NodeKind::Body, body.line, 0);
    for (const Node& s : body.kids) expand_stmt(s, out.kids, depth);
    return out;
  }

  bool try_inline(const Node& stmt, const Node& call, const Node& def,
                  std::vector<Node>& out, int depth) {
    const Node& params = def.kids[0];
    std::vector<std::string> param_names;
    for (const Node& p : params.kids) {
      if (p.text.empty() || p.text[0] == '*' || p.text == "/") {
        return false;  // starred/keyword-only machinery: leave the call opaque
      }
      param_names.push_back(p.text);
    }
    std::vector<const Node*> positional;
    std::unordered_map<std::string, const Node*> keyword;
    for (size_t i = 1; i < call.kids.size(); ++i) {
      const Node& arg = call.kids[i];
      if (arg.kind == NodeKind::Keyword) {
        keyword[arg.text] = &arg.kids[0];
      } else if (arg.kind == NodeKind::Starred || arg.kind == NodeKind::DoubleStarred) {
        return false;
      } else {
        positional.push_back(&arg);
      }
    }
    if (positional.size() > param_names.size()) return false;

    std::string suffix = "$L" + std::to_string(call.line) + "n" + std::to_string(++clone_counter);

    // locals: params plus names assigned in the body, except declared globals
    std::unordered_set<std::string> locals(param_names.begin(), param_names.end());
    std::unordered_set<std::string> declared_global;
    collect_locals(def.kids[1], locals, declared_global);
    for (const std::string& g : declared_global) locals.erase(g);

    // bind parameters
    for (size_t i = 0; i < param_names.size(); ++i) {
      const Node* arg = i < positional.size() ? positional[i] : nullptr;
      if (arg == nullptr) {
        auto kw = keyword.find(param_names[i]);
        if (kw != keyword.end()) arg = kw->second;
      }
      Node assign(NodeKind::Assign, call.line, 0);
      Node target(NodeKind::Name, call.line, 0);
      target.text = param_names[i] + suffix;
      assign.kids.push_back(std::move(target));
      if (arg != nullptr) {
        assign.kids.push_back(*arg);
      } else if (params.kids[i].flag && !params.kids[i].kids.empty() &&
                 (params.kids[i].kids[0].kind == NodeKind::Name ||
                  params.kids[i].kids[0].kind == NodeKind::IntLit ||
                  params.kids[i].kids[0].kind == NodeKind::FloatLit ||
                  params.kids[i].kids[0].kind == NodeKind::StrLit ||
                  params.kids[i].kids[0].kind == NodeKind::BoolLit ||
                  params.kids[i].kids[0].kind == NodeKind::NoneLit)) {
        assign.kids.push_back(params.kids[i].kids[0]);
      } else {
        Node none(NodeKind::NoneLit, call.line, 0);
        assign.kids.push_back(std::move(none));
      }
      out.push_back(std::move(assign));
    }

    // result variable of the call, when captured
    std::string result_name;
    if (stmt.kind == NodeKind::Assign) result_name = stmt.kids[0].text;

    Node cloned = clone_body(def.kids[1], locals, suffix, result_name, call.line);
    for (Node& s : cloned.kids) expand_stmt(s, out, depth - 1);
    if (notes != nullptr) {
      notes->push_back("inlined call to '" + def.text + "' at line " +
                       std::to_string(call.line));
    }
    return true;
  }

  static void collect_locals(const Node& n, std::unordered_set<std::string>& locals,
                             std::unordered_set<std::string>& declared_global) {
    if (n.kind == NodeKind::Assign && !n.kids.empty() &&
        n.kids[0].kind == NodeKind::Name) {
      locals.insert(n.kids[0].text);
    }
    if (n.kind == NodeKind::For && !n.kids.empty() && n.kids[0].kind == NodeKind::Name) {
      locals.insert(n.kids[0].text);
    }
    if (n.kind == NodeKind::Global) {
      std::string names = n.text;
      size_t start = 0;
      while (start < names.size()) {
        size_t comma = names.find(',', start);
        declared_global.insert(names.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    if (n.kind == NodeKind::FunctionDef || n.kind == NodeKind::ClassDef) return;
    for (const Node& k : n.kids) collect_locals(k, locals, declared_global);
  }

  Node clone_body(const Node& body, const std::unordered_set<std::string>& locals,
                  const std::string& suffix, const std::string& result_name,
                  int call_line) {
    Node out(NodeKind::Body, body.line, 0);
    for (const Node& s : body.kids) {
      out.kids.push_back(rename(s, locals, suffix, result_name));
    }
    (void)call_line;
    return out;
  }

  // Renames locals and rewrites `return v` into an assignment to the
  // call-site result variable (or a Nop when the result is unused).
  Node rename(const Node& n, const std::unordered_set<std::string>& locals,
              const std::string& suffix, const std::string& result_name) const {
    if (n.kind == NodeKind::Return) {
      if (!result_name.empty() && !n.kids.empty()) {
        Node assign(NodeKind::Assign, n.line, 0);
        Node target(NodeKind::Name, n.line, 0);
        target.text = result_name;
        assign.kids.push_back(std::move(target));
        assign.kids.push_back(rename(n.kids[0], locals, suffix, result_name));
        return assign;
      }
      return Node(NodeKind::Nop, n.line, 0);
    }
    Node out = n;
    if (n.kind == NodeKind::Name && locals.count(n.text)) {
      out.text = n.text + suffix;
    }
    for (size_t i = 0; i < out.kids.size(); ++i) {
      out.kids[i] = rename(n.kids[i], locals, suffix, result_name);
    }
    return out;
  }
};

}  // namespace

DesugarResult desugar(const Node& module) {
  Lowerer lowerer;
  lowerer.scan(module);
  DesugarResult result;
  result.core = Node(NodeKind::Module, module.line, module.col);
  for (const Node& stmt : module.kids) lowerer.lower_stmt(stmt, result.core.kids);
  result.notes = std::move(lowerer.notes);
  result.imports = std::move(lowerer.imports);
  return result;
}

Node inline_functions(const Node& core_module, int depth,
                      std::vector<std::string>* notes) {
  Inliner inliner;
  inliner.notes = notes;
  inliner.max_depth = depth;
  return inliner.run(core_module);
}

}  // namespace leaklint
