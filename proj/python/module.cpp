// Python bindings for the leaklint analyzer.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leaklint/report.hpp"

namespace py = pybind11;

namespace {

leaklint::AnalyzeConfig make_config(const std::string& specs, long budget, int jobs,
                                    int context_depth) {
  leaklint::AnalyzeConfig config;
  config.specs_path = specs;
  config.budget = budget;
  config.jobs = jobs;
  config.inline_depth = context_depth;
  return config;
}

}  // namespace

PYBIND11_MODULE(_leaklint, m) {
  m.doc() = "Static detection of train/test data leakage in data-science code.";

  m.def(
      "analyze_file",
      [](const std::string& path, const std::string& specs, long budget, int jobs,
         int context_depth) {
        auto config = make_config(specs, budget, jobs, context_depth);
        auto result = leaklint::analyze_file(path, config);
        return leaklint::render(result, leaklint::OutputFormat::Json);
      },
      py::arg("path"), py::arg("specs") = "builtin", py::arg("budget") = 5000000L,
      py::arg("jobs") = 0, py::arg("context_depth") = 2,
      "Analyze one script or notebook; returns the result as a JSON string.");

  m.def(
      "analyze_source",
      [](const std::string& code, const std::string& name, const std::string& specs,
         long budget, int context_depth) {
        auto config = make_config(specs, budget, 0, context_depth);
        auto db = leaklint::load_specs(specs.empty() ? "builtin" : specs);
        auto result = leaklint::analyze_source(code, name, db, config);
        return leaklint::render(result, leaklint::OutputFormat::Json);
      },
      py::arg("code"), py::arg("name") = "<memory>", py::arg("specs") = "builtin",
      py::arg("budget") = 5000000L, py::arg("context_depth") = 2,
      "Analyze in-memory source text; returns the result as a JSON string.");

  m.def(
      "analyze_corpus",
      [](const std::vector<std::string>& paths, const std::string& specs, long budget,
         int jobs, int context_depth) {
        auto config = make_config(specs, budget, jobs, context_depth);
        auto stats = leaklint::analyze_corpus(paths, config);
        return leaklint::render(stats, leaklint::OutputFormat::Json);
      },
      py::arg("paths"), py::arg("specs") = "builtin", py::arg("budget") = 5000000L,
      py::arg("jobs") = 0, py::arg("context_depth") = 2,
      "Analyze a batch of files; returns corpus statistics as a JSON string.");

  m.def(
      "render_text",
      [](const std::string& result_json) {
        auto result = leaklint::result_from_json(result_json);
        return leaklint::render(result, leaklint::OutputFormat::Text);
      },
      py::arg("result_json"), "Render an analysis result JSON as text diagnostics.");
}
