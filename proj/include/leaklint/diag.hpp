// Error types shared across the analysis pipeline.
#pragma once

#include <stdexcept>
#include <string>

namespace leaklint {

struct SourceLocation {
  int line = 0;  // 1-based, in concatenated source
  int col = 0;   // 1-based
};

// File could not be read at all.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Notebook JSON is malformed, has an unsupported nbformat, or lacks cells.
class NotebookFormatError : public std::runtime_error {
 public:
  explicit NotebookFormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// First offending location of an unparseable source unit.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, SourceLocation loc)
      : std::runtime_error(msg), location(loc) {}
  SourceLocation location;
};

// Spec database file is structurally invalid.
class SpecFormatError : public std::runtime_error {
 public:
  explicit SpecFormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Constraint propagation exceeded the configured budget.
class AnalysisBudgetExceeded : public std::runtime_error {
 public:
  explicit AnalysisBudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace leaklint
