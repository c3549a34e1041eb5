// leaklint command-line interface.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "leaklint/report.hpp"

namespace fs = std::filesystem;

namespace {

bool has_analyzable_extension(const fs::path& path) {
  return path.extension() == ".py" || path.extension() == ".ipynb";
}

std::vector<std::string> collect_inputs(const std::vector<std::string>& raw) {
  std::vector<std::string> files;
  for (const std::string& arg : raw) {
    fs::path path(arg);
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::recursive_directory_iterator(path, ec)) {
        if (entry.is_regular_file() && has_analyzable_extension(entry.path())) {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(arg);
    }
  }
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"leaklint: static detection of train/test data leakage in "
               "data-science code"};
  std::string format = "text";
  std::string specs_path;
  long budget = 5000000;
  int jobs = 0;
  int context_depth = 2;
  bool batch = false;
  std::string stats_out;
  std::vector<std::string> inputs;

  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--specs", specs_path,
                 "User API spec file layered over the builtin database "
                 "(env: LEAKLINT_SPECS)")
      ->envname("LEAKLINT_SPECS");
  app.add_option("--budget", budget, "Points-to propagation budget per file");
  app.add_option("--jobs", jobs, "Worker threads for batch mode (0 = all cores)");
  app.add_option("--context-depth", context_depth,
                 "Call-site context depth for function expansion");
  app.add_flag("--batch", batch, "Aggregate corpus statistics over all inputs");
  app.add_option("--stats-out", stats_out, "Write corpus statistics JSON to a file");
  app.add_option("paths", inputs, "Files or directories (.py/.ipynb)")->required();
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::string> files = collect_inputs(inputs);
  if (files.empty()) {
    std::cerr << "leaklint: no analyzable files found\n";
    return 2;
  }

  leaklint::AnalyzeConfig config;
  config.specs_path = specs_path;
  config.budget = budget;
  config.jobs = jobs;
  config.inline_depth = context_depth;
  const leaklint::OutputFormat out_format =
      format == "json" ? leaklint::OutputFormat::Json : leaklint::OutputFormat::Text;

  bool any_findings = false;
  bool any_errors = false;

  if (batch) {
    std::vector<leaklint::AnalysisResult> results;
    leaklint::CorpusStats stats;
    try {
      stats = leaklint::analyze_corpus(files, config, &results);
    } catch (const leaklint::SpecFormatError& e) {
      std::cerr << "leaklint: " << e.what() << "\n";
      return 2;
    }
    for (const auto& r : results) {
      any_findings |= !r.findings.empty();
      any_errors |= r.status != leaklint::AnalysisStatus::Ok;
    }
    std::cout << leaklint::render(stats, out_format);
    if (out_format == leaklint::OutputFormat::Json) std::cout << "\n";
    if (!stats_out.empty()) {
      std::ofstream out(stats_out);
      out << leaklint::render(stats, leaklint::OutputFormat::Json) << "\n";
    }
  } else {
    leaklint::SpecDB db;
    try {
      db = leaklint::load_specs(specs_path.empty() ? "builtin" : specs_path);
    } catch (const leaklint::SpecFormatError& e) {
      std::cerr << "leaklint: " << e.what() << "\n";
      return 2;
    }
    for (const std::string& file : files) {
      leaklint::AnalysisResult result = leaklint::analyze_file_with_db(file, db, config);
      any_findings |= !result.findings.empty();
      any_errors |= result.status != leaklint::AnalysisStatus::Ok;
      std::cout << leaklint::render(result, out_format);
      if (out_format == leaklint::OutputFormat::Json) std::cout << "\n";
    }
  }

  if (any_errors) return 2;
  return any_findings ? 1 : 0;
}
