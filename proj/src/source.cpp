#include "leaklint/source.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace leaklint {
namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

// Magics and shell escapes are not part of the language grammar. They are
// blanked rather than deleted so that line numbers stay stable.
bool is_magic_or_shell(const std::string& line) {
  size_t i = line.find_first_not_of(" \t");
  if (i == std::string::npos) return false;
  char c = line[i];
  if (c == '%') return true;
  if (c == '!') {
    // `!=` cannot start a statement, so a leading '!' is always an escape.
    return true;
  }
  return false;
}

std::string cell_source_text(const nlohmann::json& cell) {
  const auto it = cell.find("source");
  if (it == cell.end()) return "";
  if (it->is_string()) return it->get<std::string>();
  if (it->is_array()) {
    std::string out;
    for (const auto& part : *it) {
      if (part.is_string()) out += part.get<std::string>();
    }
    return out;
  }
  return "";
}

SourceUnit from_notebook_json(const std::string& text, const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw NotebookFormatError(path + ": invalid notebook JSON: " + e.what());
  }
  if (!doc.is_object()) throw NotebookFormatError(path + ": notebook root is not an object");
  if (doc.contains("nbformat")) {
    const auto& fmt = doc["nbformat"];
    if (!fmt.is_number_integer() || fmt.get<int>() != 4) {
      throw NotebookFormatError(path + ": unsupported nbformat version");
    }
  }
  if (!doc.contains("cells") || !doc["cells"].is_array()) {
    throw NotebookFormatError(path + ": notebook has no cells array");
  }

  SourceUnit unit;
  unit.path = path;
  unit.kind = SourceKind::Notebook;
  int cell_index = -1;
  bool first = true;
  for (const auto& cell : doc["cells"]) {
    ++cell_index;
    if (!cell.is_object()) continue;
    if (cell.value("cell_type", std::string{}) != "code") continue;
    const std::string src = cell_source_text(cell);
    std::vector<std::string> lines = split_lines(src);
    if (lines.empty()) lines.push_back("");
    if (!first) unit.code += '\n';
    first = false;
    int cell_line = 0;
    for (size_t i = 0; i < lines.size(); ++i) {
      ++cell_line;
      std::string line = lines[i];
      if (is_magic_or_shell(line)) line.clear();
      if (i > 0) unit.code += '\n';
      unit.code += line;
      unit.line_map.push_back({cell_index, cell_line});
    }
  }
  unit.code += '\n';
  return unit;
}

SourceUnit from_script_text(const std::string& text, const std::string& path) {
  SourceUnit unit;
  unit.path = path;
  unit.kind = SourceKind::Script;
  unit.code = text;
  if (unit.code.empty() || unit.code.back() != '\n') unit.code += '\n';
  int n = 0;
  for (char c : unit.code) {
    if (c == '\n') ++n;
  }
  unit.line_map.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) unit.line_map.push_back({0, i});
  return unit;
}

}  // namespace

SourceUnit load_source_from_string(const std::string& code, const std::string& path) {
  if (ends_with(path, ".ipynb")) return from_notebook_json(code, path);
  return from_script_text(code, path);
}

SourceUnit load_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return load_source_from_string(buf.str(), path);
}

}  // namespace leaklint
