// SSA-form program facts extracted from one source unit.
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "leaklint/ast.hpp"

namespace leaklint {

using VarId = int;
constexpr VarId kNoVar = -1;

enum class DefKind : uint8_t {
  Assign, Call, Phi, External, Literal, Container, Subscript, Attr, Op, Param,
};

struct Var {
  std::string name;   // base name; $tN for temporaries
  int version = 0;
  int def_line = 0;
  DefKind def_kind = DefKind::External;
  bool is_temp = false;
  std::string hint;   // display hint for temporaries (callee text)
};

enum class LiteralKind : uint8_t { Int, Float, Str, Bool, None, Ellipsis };

struct AssignFact {
  VarId target = kNoVar;
  VarId source = kNoVar;
  int line = 0;
  int order = 0;
  bool in_loop = false;
};

struct PhiFact {
  VarId target = kNoVar;
  std::vector<VarId> operands;
  int line = 0;
  int order = 0;
  bool in_loop = false;
};

struct LiteralFact {
  VarId target = kNoVar;
  LiteralKind kind = LiteralKind::None;
  std::string text;
  int line = 0;
  int order = 0;
};

enum class ContainerKind : uint8_t { List, Tuple, Set, Dict };

struct ContainerFact {
  VarId target = kNoVar;
  ContainerKind kind = ContainerKind::List;
  std::vector<VarId> elements;   // every contained value (dict: keys and values)
  int line = 0;
  int order = 0;
  bool in_loop = false;
};

struct CalleeRef {
  std::string dotted;    // resolved dotted path; empty for method/variable calls
  VarId receiver = kNoVar;
  std::string method;    // trailing name; empty for calls of plain variables
};

struct CallFact {
  VarId result = kNoVar;  // every call gets a result variable
  CalleeRef callee;
  std::vector<VarId> args;
  std::vector<std::pair<std::string, VarId>> kwargs;
  int line = 0;
  int order = 0;
  bool in_loop = false;
};

enum class IndexKind : uint8_t { ConstInt, ConstStr, Variable, Slice, Iterate, Other };

struct SubscriptLoadFact {
  VarId target = kNoVar;
  VarId object = kNoVar;
  IndexKind index = IndexKind::Other;
  long const_index = 0;       // for ConstInt
  std::string const_key;      // for ConstStr
  VarId index_var = kNoVar;   // for Variable
  bool single_row_slice = false;  // e.g. X[0:1]
  int line = 0;
  int order = 0;
  bool in_loop = false;
};

struct SubscriptStoreFact {
  VarId object = kNoVar;
  VarId index_var = kNoVar;   // kNoVar when index is a constant
  VarId source = kNoVar;
  int line = 0;
  int order = 0;
  bool in_loop = false;
};

struct AttrLoadFact {
  VarId target = kNoVar;
  VarId object = kNoVar;      // kNoVar for module attributes
  std::string attr;
  int line = 0;
  int order = 0;
  bool in_loop = false;
};

struct AttrStoreFact {
  VarId object = kNoVar;
  std::string attr;
  VarId source = kNoVar;
  int line = 0;
  int order = 0;
  bool in_loop = false;
};

enum class OpClass : uint8_t { Arith, Compare, Bool, Unary };

struct OpFact {
  VarId target = kNoVar;
  std::vector<VarId> operands;
  OpClass op = OpClass::Arith;
  int line = 0;
  int order = 0;
  bool in_loop = false;
};

struct FactBase {
  std::vector<Var> vars;
  std::vector<AssignFact> assigns;
  std::vector<PhiFact> phis;
  std::vector<LiteralFact> literals;
  std::vector<ContainerFact> containers;
  std::vector<CallFact> calls;
  std::vector<SubscriptLoadFact> sub_loads;
  std::vector<SubscriptStoreFact> sub_stores;
  std::vector<AttrLoadFact> attr_loads;
  std::vector<AttrStoreFact> attr_stores;
  std::vector<OpFact> ops;
  std::unordered_map<std::string, std::string> imports;
  std::vector<std::string> notes;
  int line_count = 0;
  int order_counter = 0;

  const Var& var(VarId id) const { return vars[static_cast<size_t>(id)]; }

  // Paper-style display: the final version of a reassigned variable keeps the
  // bare name, earlier versions are shown with their version suffix.
  std::string display_name(VarId id) const;
};

// Converts a desugared (and optionally inlined) core module to SSA facts.
// Every variable version has exactly one defining fact; phi facts join
// branch and loop-header definitions; statements inside loops are flagged.
FactBase to_ssa(const Node& core_module);

}  // namespace leaklint
