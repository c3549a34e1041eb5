#include "leaklint/facts.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace leaklint {

std::string FactBase::display_name(VarId id) const {
  const Var& v = var(id);
  if (v.is_temp) return v.hint.empty() ? v.name : v.hint;
  int max_version = 0;
  for (const Var& other : vars) {
    if (other.name == v.name) max_version = std::max(max_version, other.version);
  }
  // inline clone suffixes are machinery, not user-visible names
  std::string base = v.name.substr(0, v.name.find('$'));
  if (v.version == max_version) return base;
  return base + "_" + std::to_string(v.version);
}

namespace {

struct SsaBuilder {
  FactBase fb;
  // current version of each base name
  std::unordered_map<std::string, VarId> env;
  // all versions ever created, per name (for max-version bookkeeping)
  std::unordered_map<std::string, int> version_count;
  int loop_depth = 0;

  int next_order() { return fb.order_counter++; }

  VarId make_var(const std::string& name, int line, DefKind kind) {
    Var v;
    v.name = name;
    v.version = version_count[name]++;
    v.def_line = line;
    v.def_kind = kind;
    v.is_temp = !name.empty() && name[0] == '$';
    VarId id = static_cast<VarId>(fb.vars.size());
    fb.vars.push_back(std::move(v));
    env[name] = id;
    return id;
  }

  // Reading a name that has no definition yet creates an external variable
  // (free variables of shortened snippets, notebook ambient state).
  VarId read(const std::string& name, int line) {
    auto it = env.find(name);
    if (it != env.end()) return it->second;
    VarId id = make_var(name, 0, DefKind::External);
    (void)line;
    return id;
  }

  VarId read_operand(const Node& n) {
    if (n.kind == NodeKind::Name) return read(n.text, n.line);
    // literal operand gets its own variable
    VarId id = make_var("$lit", n.line, DefKind::Literal);
    fb.vars[static_cast<size_t>(id)].is_temp = true;
    fb.vars[static_cast<size_t>(id)].hint = n.text.empty() ? "const" : n.text;
    LiteralFact lit;
    lit.target = id;
    lit.kind = literal_kind(n);
    lit.text = n.text;
    lit.line = n.line;
    lit.order = next_order();
    fb.literals.push_back(std::move(lit));
    return id;
  }

  static LiteralKind literal_kind(const Node& n) {
    switch (n.kind) {
      case NodeKind::IntLit: return LiteralKind::Int;
      case NodeKind::FloatLit: return LiteralKind::Float;
      case NodeKind::StrLit: return LiteralKind::Str;
      case NodeKind::BoolLit: return LiteralKind::Bool;
      case NodeKind::EllipsisLit: return LiteralKind::Ellipsis;
      default: return LiteralKind::None;
    }
  }

  void run(const Node& module) {
    for (const Node& stmt : module.kids) visit_stmt(stmt);
  }

  void visit_body(const Node& body) {
    for (const Node& stmt : body.kids) visit_stmt(stmt);
  }

  void visit_stmt(const Node& stmt) {
    switch (stmt.kind) {
      case NodeKind::Assign: visit_assign(stmt); return;
      case NodeKind::ExprStmt:
        if (stmt.kids[0].kind == NodeKind::Call) {
          emit_call(stmt.kids[0], "$t.call", stmt.line);
        }
        return;
      case NodeKind::If: visit_if(stmt); return;
      case NodeKind::While: visit_loop(stmt.kids[1], stmt.line); return;
      case NodeKind::For: visit_loop(stmt.kids[1], stmt.line); return;
      case NodeKind::Try: visit_try(stmt); return;
      case NodeKind::FunctionDef:
      case NodeKind::ClassDef: {
        // only the binding is visible; the body was either inlined or skipped
        make_var(stmt.text, stmt.line, DefKind::External);
        return;
      }
      case NodeKind::Pass: case NodeKind::Break: case NodeKind::Continue:
      case NodeKind::Nop: case NodeKind::Return:
        return;
      default:
        return;
    }
  }

  void visit_assign(const Node& stmt) {
    const Node& target = stmt.kids[0];
    const Node& value = stmt.kids[1];
    if (target.kind == NodeKind::Name) {
      VarId result = eval_value(value, target.text, stmt.line);
      (void)result;
      return;
    }
    if (target.kind == NodeKind::Attribute) {
      VarId src = read_operand(stmt.kids[1]);
      AttrStoreFact fact;
      fact.object = read(target.kids[0].text, stmt.line);
      fact.attr = target.text;
      fact.source = src;
      fact.line = stmt.line;
      fact.order = next_order();
      fact.in_loop = loop_depth > 0;
      fb.attr_stores.push_back(std::move(fact));
      return;
    }
    if (target.kind == NodeKind::Subscript) {
      VarId src = read_operand(stmt.kids[1]);
      SubscriptStoreFact fact;
      fact.object = read(target.kids[0].text, stmt.line);
      const Node& index = target.kids[1];
      fact.index_var = index.kind == NodeKind::Name ? read(index.text, stmt.line) : kNoVar;
      fact.source = src;
      fact.line = stmt.line;
      fact.order = next_order();
      fact.in_loop = loop_depth > 0;
      fb.sub_stores.push_back(std::move(fact));
      return;
    }
  }

  // Evaluates a core value expression, binding it to a fresh version of
  // `target_name`. Returns the new variable.
  VarId eval_value(const Node& value, const std::string& target_name, int line) {
    switch (value.kind) {
      case NodeKind::Name: {
        VarId src = read(value.text, line);
        VarId dst = make_var(target_name, line, DefKind::Assign);
        AssignFact fact{dst, src, line, next_order(), loop_depth > 0};
        fb.assigns.push_back(fact);
        return dst;
      }
      case NodeKind::IntLit: case NodeKind::FloatLit: case NodeKind::StrLit:
      case NodeKind::BoolLit: case NodeKind::NoneLit: case NodeKind::EllipsisLit: {
        VarId dst = make_var(target_name, line, DefKind::Literal);
        LiteralFact lit;
        lit.target = dst;
        lit.kind = literal_kind(value);
        lit.text = value.text;
        lit.line = line;
        lit.order = next_order();
        fb.literals.push_back(std::move(lit));
        return dst;
      }
      case NodeKind::TupleLit: case NodeKind::ListLit: case NodeKind::SetLit:
      case NodeKind::DictLit: {
        ContainerFact fact;
        for (const Node& k : value.kids) fact.elements.push_back(read_operand(k));
        VarId dst = make_var(target_name, line, DefKind::Container);
        fact.target = dst;
        fact.kind = value.kind == NodeKind::TupleLit ? ContainerKind::Tuple
                  : value.kind == NodeKind::ListLit  ? ContainerKind::List
                  : value.kind == NodeKind::SetLit   ? ContainerKind::Set
                                                     : ContainerKind::Dict;
        fact.line = line;
        fact.order = next_order();
        fact.in_loop = loop_depth > 0;
        fb.containers.push_back(std::move(fact));
        return dst;
      }
      case NodeKind::Call:
        return emit_call(value, target_name, line);
      case NodeKind::Attribute: {
        AttrLoadFact fact;
        if (value.kids[0].str2 == "module") {
          fact.object = kNoVar;  // module attribute such as np.nan
          fact.attr = value.kids[0].text + "." + value.text;
        } else {
          fact.object = read(value.kids[0].text, line);
          fact.attr = value.text;
        }
        VarId dst = make_var(target_name, line, DefKind::Attr);
        fact.target = dst;
        fact.line = line;
        fact.order = next_order();
        fact.in_loop = loop_depth > 0;
        fb.attr_loads.push_back(std::move(fact));
        return dst;
      }
      case NodeKind::Subscript: {
        SubscriptLoadFact fact;
        fact.object = read(value.kids[0].text, line);
        fill_index(value.kids[1], fact, line);
        VarId dst = make_var(target_name, line, DefKind::Subscript);
        fact.target = dst;
        fact.line = line;
        fact.order = next_order();
        fact.in_loop = loop_depth > 0;
        fb.sub_loads.push_back(std::move(fact));
        return dst;
      }
      case NodeKind::BinOp: case NodeKind::UnaryOp:
      case NodeKind::Compare: case NodeKind::BoolOpExpr: {
        OpFact fact;
        for (const Node& k : value.kids) fact.operands.push_back(read_operand(k));
        VarId dst = make_var(target_name, line, DefKind::Op);
        fact.target = dst;
        fact.op = value.kind == NodeKind::Compare ? OpClass::Compare
                : value.kind == NodeKind::BoolOpExpr ? OpClass::Bool
                : value.kind == NodeKind::UnaryOp ? OpClass::Unary
                                                  : OpClass::Arith;
        if (value.kind == NodeKind::UnaryOp && value.text == "not") {
          fact.op = OpClass::Bool;
        }
        fact.line = line;
        fact.order = next_order();
        fact.in_loop = loop_depth > 0;
        fb.ops.push_back(std::move(fact));
        return dst;
      }
      default: {
        // opaque value
        VarId dst = make_var(target_name, line, DefKind::External);
        return dst;
      }
    }
  }

  void fill_index(const Node& index, SubscriptLoadFact& fact, int line) {
    switch (index.kind) {
      case NodeKind::IntLit:
        fact.index = IndexKind::ConstInt;
        fact.const_index = std::strtol(index.text.c_str(), nullptr, 0);
        return;
      case NodeKind::StrLit:
        fact.index = IndexKind::ConstStr;
        fact.const_key = index.text;
        return;
      case NodeKind::Name:
        fact.index = IndexKind::Variable;
        fact.index_var = read(index.text, line);
        return;
      case NodeKind::EllipsisLit:
        fact.index = IndexKind::Iterate;
        return;
      case NodeKind::SliceExpr: {
        fact.index = IndexKind::Slice;
        fact.single_row_slice = is_single_row_slice(index);
        // slice bounds that are variables still flow into the result
        for (const Node& part : index.kids) {
          if (part.kind == NodeKind::Name) {
            // bounds do not carry rows; ignored for data flow
          }
        }
        return;
      }
      case NodeKind::TupleLit: {
        fact.index = IndexKind::Other;
        for (const Node& part : index.kids) {
          if (part.kind == NodeKind::SliceExpr && is_single_row_slice(part)) {
            fact.single_row_slice = true;
          }
          if (part.kind == NodeKind::Name && fact.index_var == kNoVar) {
            fact.index_var = read(part.text, line);
            fact.index = IndexKind::Variable;
          }
        }
        return;
      }
      default:
        fact.index = IndexKind::Other;
        return;
    }
  }

  static bool is_single_row_slice(const Node& slice) {
    // X[a:a+1] style constant slices of width one, most commonly X[0:1]
    if (slice.kids.size() != 3) return false;
    const Node& lower = slice.kids[0];
    const Node& upper = slice.kids[1];
    if (lower.kind != NodeKind::IntLit || upper.kind != NodeKind::IntLit) return false;
    long lo = std::strtol(lower.text.c_str(), nullptr, 0);
    long hi = std::strtol(upper.text.c_str(), nullptr, 0);
    return hi - lo == 1;
  }

  VarId emit_call(const Node& call, const std::string& target_name, int line) {
    CallFact fact;
    const Node& callee = call.kids[0];
    std::string hint;
    if (callee.kind == NodeKind::Name && !callee.flag) {
      fact.callee.dotted = callee.text;
      size_t dot = callee.text.rfind('.');
      fact.callee.method = dot == std::string::npos ? callee.text
                                                    : callee.text.substr(dot + 1);
      hint = fact.callee.method + "(...)";
    } else if (callee.kind == NodeKind::Name) {
      fact.callee.receiver = read(callee.text, line);
      fact.callee.method.clear();  // call of a variable
      hint = callee.text + "(...)";
    } else {  // Attribute: method call
      fact.callee.receiver = read(callee.kids[0].text, line);
      fact.callee.method = callee.text;
      hint = callee.kids[0].text + "." + callee.text + "(...)";
    }
    for (size_t i = 1; i < call.kids.size(); ++i) {
      const Node& arg = call.kids[i];
      if (arg.kind == NodeKind::Keyword) {
        fact.kwargs.emplace_back(arg.text, read_operand(arg.kids[0]));
      } else if (arg.kind == NodeKind::Starred || arg.kind == NodeKind::DoubleStarred) {
        fact.args.push_back(read_operand(arg.kids[0]));
      } else {
        fact.args.push_back(read_operand(arg));
      }
    }
    VarId dst = make_var(target_name, line, DefKind::Call);
    if (fb.vars[static_cast<size_t>(dst)].is_temp) {
      fb.vars[static_cast<size_t>(dst)].hint = hint;
    }
    fact.result = dst;
    fact.line = line;
    fact.order = next_order();
    fact.in_loop = loop_depth > 0;
    fb.calls.push_back(std::move(fact));
    return dst;
  }

  // --- control flow ----------------------------------------------------------

  void visit_if(const Node& stmt) {
    read_operand(stmt.kids[0]);
    auto before = env;
    visit_body(stmt.kids[1]);
    auto after_then = env;
    env = before;
    visit_body(stmt.kids[2]);
    auto after_else = env;
    join(before, after_then, after_else, stmt.line);
  }

  void visit_try(const Node& stmt) {
    auto before = env;
    std::vector<std::unordered_map<std::string, VarId>> branches;
    visit_body(stmt.kids[0]);
    branches.push_back(env);
    for (size_t i = 1; i < stmt.kids.size(); ++i) {
      const Node& k = stmt.kids[i];
      env = branches[0];  // handlers run after a partial body execution
      if (k.kind == NodeKind::Except) {
        visit_body(k.kids.back());
        branches.push_back(env);
      } else {
        visit_body(k);
        branches.push_back(env);
      }
    }
    // join all exits, including the possibility the body raised early
    branches.push_back(before);
    join_many(branches, stmt.line);
  }

  void join(const std::unordered_map<std::string, VarId>& before,
            const std::unordered_map<std::string, VarId>& a,
            const std::unordered_map<std::string, VarId>& b, int line) {
    std::vector<std::unordered_map<std::string, VarId>> branches{a, b};
    (void)before;
    join_many(branches, line);
  }

  void join_many(const std::vector<std::unordered_map<std::string, VarId>>& branches,
                 int line) {
    std::unordered_set<std::string> names;
    for (const auto& branch : branches) {
      for (const auto& [name, id] : branch) names.insert(name);
    }
    std::vector<std::string> ordered(names.begin(), names.end());
    std::sort(ordered.begin(), ordered.end());
    env.clear();
    for (const std::string& name : ordered) {
      std::vector<VarId> versions;
      for (const auto& branch : branches) {
        auto it = branch.find(name);
        if (it != branch.end() &&
            std::find(versions.begin(), versions.end(), it->second) == versions.end()) {
          versions.push_back(it->second);
        }
      }
      if (versions.size() == 1) {
        env[name] = versions[0];
        continue;
      }
      VarId dst = make_var(name, line, DefKind::Phi);
      PhiFact phi;
      phi.target = dst;
      phi.operands = versions;
      phi.line = line;
      phi.order = next_order();
      phi.in_loop = loop_depth > 0;
      fb.phis.push_back(std::move(phi));
    }
  }

  void visit_loop(const Node& body, int line) {
    // names assigned anywhere in the body get a header phi
    std::unordered_set<std::string> assigned;
    collect_assigned(body, assigned);
    std::vector<std::string> ordered(assigned.begin(), assigned.end());
    std::sort(ordered.begin(), ordered.end());

    std::unordered_map<std::string, VarId> entry_version;
    std::unordered_map<std::string, size_t> header_phi_index;
    for (const std::string& name : ordered) {
      auto it = env.find(name);
      VarId before = it != env.end() ? it->second : kNoVar;
      VarId header = make_var(name, line, DefKind::Phi);
      PhiFact phi;
      phi.target = header;
      if (before != kNoVar) phi.operands.push_back(before);
      phi.line = line;
      phi.order = next_order();
      phi.in_loop = true;
      header_phi_index[name] = fb.phis.size();
      fb.phis.push_back(std::move(phi));
      entry_version[name] = header;
    }
    ++loop_depth;
    visit_body(body);
    --loop_depth;
    // patch back edges and make the header phi the exit version
    for (const std::string& name : ordered) {
      VarId end_version = env.count(name) ? env[name] : kNoVar;
      PhiFact& phi = fb.phis[header_phi_index[name]];
      if (end_version != kNoVar && end_version != phi.target &&
          std::find(phi.operands.begin(), phi.operands.end(), end_version) ==
              phi.operands.end()) {
        phi.operands.push_back(end_version);
      }
      env[name] = entry_version[name];
    }
  }

  static void collect_assigned(const Node& n, std::unordered_set<std::string>& out) {
    if (n.kind == NodeKind::Assign && !n.kids.empty() &&
        n.kids[0].kind == NodeKind::Name) {
      // temporaries never live across iterations and need no header phi
      if (n.kids[0].text.empty() || n.kids[0].text[0] != '$') {
        out.insert(n.kids[0].text);
      }
    }
    if (n.kind == NodeKind::FunctionDef || n.kind == NodeKind::ClassDef) return;
    for (const Node& k : n.kids) collect_assigned(k, out);
  }
};

}  // namespace

FactBase to_ssa(const Node& core_module) {
  SsaBuilder builder;
  builder.run(core_module);
  return std::move(builder.fb);
}

}  // namespace leaklint
