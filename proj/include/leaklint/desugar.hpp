// Lowering of the surface AST into core statement forms, plus inlining of
// statically-resolvable user-defined functions.
//
// Core form invariants after desugar():
//   - one operation per statement: every call, subscript, attribute access
//     and operator application has its operands reduced to names or literals,
//     with fresh temporaries ($tN) carrying intermediate values;
//   - tuple/list unpacking is rewritten into indexed element assignments;
//   - augmented assignment is rewritten into read-modify-write;
//   - `with` bodies run inline; comprehensions become explicit loops over a
//     fresh accumulator; conditional expressions become if statements;
//   - for loops carry [Name iter_temp, Body]; the body starts with the
//     element extraction (a subscript whose index is the Ellipsis marker);
//   - unsupported constructs degrade the enclosing statement to Nop and are
//     recorded as notes.
//
// Call callee representation in core form:
//   kids[0] == Name with flag=false  -> dotted library path ("numpy.mean")
//   kids[0] == Name with flag=true   -> call of a local variable
//   kids[0] == Attribute(Name recv)  -> method call on a variable
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "leaklint/ast.hpp"

namespace leaklint {

struct DesugarResult {
  Node core;
  std::vector<std::string> notes;   // recorded unsupported constructs
  std::unordered_map<std::string, std::string> imports;  // alias -> module path
};

DesugarResult desugar(const Node& module);

// Inlines calls to module-level functions whose target is statically unique.
// Each call site gets its own renamed clone of the body; nested calls are
// expanded up to `depth` levels. Variables cloned at call site L are renamed
// name$L (and name$L1$L2 for nested expansion), which doubles as the
// call-site context of everything allocated inside.
Node inline_functions(const Node& core_module, int depth = 2,
                      std::vector<std::string>* notes = nullptr);

}  // namespace leaklint
