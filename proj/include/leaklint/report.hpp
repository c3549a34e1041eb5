// Per-file orchestration, output rendering, and batch corpus statistics.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "leaklint/leakage.hpp"
#include "leaklint/specs.hpp"

namespace leaklint {

enum class AnalysisStatus : uint8_t { Ok, SyntaxErr, BudgetExceeded, FormatError };
const char* analysis_status_name(AnalysisStatus status);

struct FileMetrics {
  int models_trained = 0;
  int models_evaluated = 0;
  int eval_sites = 0;
  bool uses_pipeline = false;
  int line_count = 0;
  std::vector<int> pre_distances;    // |reduce line - train line| per finding
  std::vector<int> multitest_gaps;   // consecutive eval-site gaps on related data
};

struct AnalysisResult {
  std::string file;
  AnalysisStatus status = AnalysisStatus::Ok;
  std::string error;                    // for non-ok statuses
  std::vector<LeakageFinding> findings; // deduplicated, canonically ordered
  FileMetrics metrics;
  std::vector<ModelDataTuple> tuples;   // extraction result, for tooling/tests
  bool has_kind(LeakKind kind) const {
    for (const LeakageFinding& f : findings) {
      if (f.kind == kind) return true;
    }
    return false;
  }
};

struct CorpusStats {
  int n_files = 0;
  double pct_preprocessing = 0, pct_overlap = 0, pct_multitest = 0, pct_any = 0;
  double avg_distance_pre = 0, avg_distance_multitest = 0;
  std::vector<int> distance_histogram_pre = std::vector<int>(10, 0);
  std::vector<int> distance_histogram_multitest = std::vector<int>(10, 0);
  std::map<std::string, int> error_breakdown;
};

struct AnalyzeConfig {
  std::string specs_path;     // empty or "builtin" for the bundled database
  long budget = 5000000;
  int inline_depth = 2;       // call-site context depth
  int jobs = 0;               // 0 = hardware concurrency
};

AnalysisResult analyze_file(const std::string& path, const AnalyzeConfig& config = {});
AnalysisResult analyze_file_with_db(const std::string& path, const SpecDB& db,
                                    const AnalyzeConfig& config = {});
// In-memory variant; `name` is used for reporting and format detection.
AnalysisResult analyze_source(const std::string& code, const std::string& name,
                              const SpecDB& db, const AnalyzeConfig& config = {});

CorpusStats analyze_corpus(const std::vector<std::string>& paths,
                           const AnalyzeConfig& config = {},
                           std::vector<AnalysisResult>* results_out = nullptr);
CorpusStats aggregate_stats(const std::vector<AnalysisResult>& results);

enum class OutputFormat : uint8_t { Text, Json };

std::string render(const AnalysisResult& result, OutputFormat format);
std::string render(const CorpusStats& stats, OutputFormat format);

// Parses a JSON rendering back into a result (findings and metrics).
AnalysisResult result_from_json(const std::string& json_text);

}  // namespace leaklint
