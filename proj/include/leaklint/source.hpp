// Loading of script and notebook sources into a single analyzable unit.
#pragma once

#include <string>
#include <vector>

#include "leaklint/diag.hpp"

namespace leaklint {

enum class SourceKind { Script, Notebook };

// One analyzable source unit. For notebooks, `code` is the in-order
// concatenation of code cells; `line_map` maps each concatenated line back
// to (cell index, line within cell). Cell indices count all cells, not just
// code cells. For scripts the mapping is the identity with cell index 0.
struct SourceUnit {
  std::string path;
  SourceKind kind = SourceKind::Script;
  std::string code;
  struct CellLine {
    int cell = 0;
    int cell_line = 0;  // 1-based
  };
  std::vector<CellLine> line_map;  // index 0 corresponds to line 1

  int line_count() const { return static_cast<int>(line_map.size()); }
  CellLine map_line(int line) const {
    if (line < 1 || line > line_count()) return {};
    return line_map[static_cast<size_t>(line - 1)];
  }
};

// Reads a file from disk. `.ipynb` files are parsed as nbformat-4 notebook
// JSON; anything else is read verbatim as a script.
// Throws IoError and NotebookFormatError.
SourceUnit load_source(const std::string& path);

// Builds a unit from an in-memory string; `path` is used for reporting only.
// When `path` ends in .ipynb the string is parsed as notebook JSON.
SourceUnit load_source_from_string(const std::string& code, const std::string& path);

}  // namespace leaklint
