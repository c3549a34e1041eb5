#include "leaklint/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "leaklint/desugar.hpp"
#include "leaklint/parser.hpp"
#include "leaklint/source.hpp"

namespace leaklint {

using ordered_json = nlohmann::ordered_json;

const char* analysis_status_name(AnalysisStatus status) {
  switch (status) {
    case AnalysisStatus::Ok: return "ok";
    case AnalysisStatus::SyntaxErr: return "syntax_error";
    case AnalysisStatus::BudgetExceeded: return "budget_exceeded";
    case AnalysisStatus::FormatError: return "format_error";
  }
  return "?";
}

namespace {

// One representative per (kind, reduce-site or tuple); detectors already
// order their output canonically.
std::vector<LeakageFinding> deduplicate(std::vector<LeakageFinding> findings) {
  std::vector<LeakageFinding> out;
  for (LeakageFinding& f : findings) {
    bool duplicate = false;
    for (const LeakageFinding& kept : out) {
      if (kept.kind != f.kind) continue;
      if (f.kind == LeakKind::Preprocessing && kept.reduce_line == f.reduce_line) {
        duplicate = true;
      } else if (f.kind == LeakKind::Overlap && kept.model == f.model &&
                 kept.train_line == f.train_line) {
        duplicate = true;
      } else if (f.kind == LeakKind::MultiTest) {
        duplicate = true;
      }
      if (duplicate) break;
    }
    if (!duplicate) out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end(), [](const LeakageFinding& a, const LeakageFinding& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.line != b.line) return a.line < b.line;
    return a.message < b.message;
  });
  return out;
}

std::vector<int> multitest_eval_gaps(const std::vector<ModelDataTuple>& tuples,
                                     const RelData& rel) {
  // union sites evaluating related data, then measure consecutive line gaps
  struct Site {
    int line;
    VarId data;
  };
  std::vector<Site> sites;
  for (const ModelDataTuple& t : tuples) {
    for (const auto& e : t.eval_events) sites.push_back({e.line, e.data});
  }
  std::vector<int> group(sites.size());
  std::iota(group.begin(), group.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (group[static_cast<size_t>(x)] != x) {
      group[static_cast<size_t>(x)] = group[static_cast<size_t>(group[static_cast<size_t>(x)])];
      x = group[static_cast<size_t>(x)];
    }
    return x;
  };
  for (size_t i = 0; i < sites.size(); ++i) {
    for (size_t j = i + 1; j < sites.size(); ++j) {
      if (rel.related(sites[i].data, sites[j].data)) {
        group[static_cast<size_t>(find(static_cast<int>(i)))] =
            find(static_cast<int>(j));
      }
    }
  }
  std::map<int, std::vector<int>> lines_by_group;
  for (size_t i = 0; i < sites.size(); ++i) {
    lines_by_group[find(static_cast<int>(i))].push_back(sites[i].line);
  }
  std::vector<int> gaps;
  for (auto& [root, lines] : lines_by_group) {
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    for (size_t i = 1; i < lines.size(); ++i) gaps.push_back(lines[i] - lines[i - 1]);
  }
  std::sort(gaps.begin(), gaps.end());
  return gaps;
}

}  // namespace

AnalysisResult analyze_source(const std::string& code, const std::string& name,
                              const SpecDB& db, const AnalyzeConfig& config) {
  AnalysisResult result;
  result.file = name;
  SourceUnit unit;
  try {
    unit = load_source_from_string(code, name);
  } catch (const NotebookFormatError& e) {
    result.status = AnalysisStatus::FormatError;
    result.error = e.what();
    return result;
  }
  result.metrics.line_count = unit.line_count();
  try {
    Node ast = parse(unit);
    DesugarResult desugared = desugar(ast);
    Node inlined = inline_functions(desugared.core, config.inline_depth, &desugared.notes);
    FactBase facts = to_ssa(inlined);
    facts.imports = std::move(desugared.imports);
    facts.notes = std::move(desugared.notes);
    facts.line_count = unit.line_count();

    PointerAnalysisOptions popts;
    popts.budget = config.budget;
    PointsTo pts = pointer_analysis(facts, db, popts);
    TypeMap types = infer(facts, db, pts);
    FlowGraph graph = build_flow_graph(facts, pts, types, db);
    RelData rel = compute_reldata(graph);
    std::vector<ModelDataTuple> tuples = compute_model_data(graph, rel, facts, pts, db);

    std::vector<LeakageFinding> findings = detect_preprocessing(tuples, rel, graph);
    std::vector<LeakageFinding> overlaps = detect_overlap(tuples, rel, facts);
    findings.insert(findings.end(), overlaps.begin(), overlaps.end());
    if (auto multi = detect_multi_test(tuples, facts)) findings.push_back(*multi);
    result.findings = deduplicate(std::move(findings));

    // per-file counters
    std::vector<std::pair<int, VarId>> trained, evaluated;
    for (const ModelDataTuple& t : tuples) {
      std::pair<int, VarId> key{t.model_object, t.model_var};
      if (std::find(trained.begin(), trained.end(), key) == trained.end()) {
        trained.push_back(key);
      }
      if (!t.eval_events.empty() &&
          std::find(evaluated.begin(), evaluated.end(), key) == evaluated.end()) {
        evaluated.push_back(key);
      }
      result.metrics.eval_sites += static_cast<int>(t.eval_events.size());
    }
    result.metrics.models_trained = static_cast<int>(trained.size());
    result.metrics.models_evaluated = static_cast<int>(evaluated.size());
    for (size_t i = 0; i < facts.calls.size(); ++i) {
      if (pts.call_spec[i] != nullptr && pts.call_spec[i]->kind == ApiKind::PipelineFit) {
        result.metrics.uses_pipeline = true;
      }
    }
    for (const LeakageFinding& f : result.findings) {
      if (f.kind == LeakKind::Preprocessing) {
        result.metrics.pre_distances.push_back(std::abs(f.reduce_line - f.train_line));
      }
    }
    if (result.has_kind(LeakKind::MultiTest)) {
      result.metrics.multitest_gaps = multitest_eval_gaps(tuples, rel);
    }
    result.tuples = std::move(tuples);
  } catch (const SyntaxError& e) {
    result.status = AnalysisStatus::SyntaxErr;
    result.error = std::string(e.what()) + " at line " + std::to_string(e.location.line);
    result.findings.clear();
  } catch (const AnalysisBudgetExceeded& e) {
    result.status = AnalysisStatus::BudgetExceeded;
    result.error = e.what();
    result.findings.clear();
  }
  return result;
}

AnalysisResult analyze_file_with_db(const std::string& path, const SpecDB& db,
                                    const AnalyzeConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    AnalysisResult result;
    result.file = path;
    result.status = AnalysisStatus::FormatError;
    result.error = "cannot open file: " + path;
    return result;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return analyze_source(buf.str(), path, db, config);
}

AnalysisResult analyze_file(const std::string& path, const AnalyzeConfig& config) {
  SpecDB db = load_specs(config.specs_path.empty() ? "builtin" : config.specs_path);
  return analyze_file_with_db(path, db, config);
}

CorpusStats analyze_corpus(const std::vector<std::string>& paths,
                           const AnalyzeConfig& config,
                           std::vector<AnalysisResult>* results_out) {
  SpecDB db = load_specs(config.specs_path.empty() ? "builtin" : config.specs_path);
  std::vector<AnalysisResult> results(paths.size());
  int jobs = config.jobs > 0
                 ? config.jobs
                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min<int>(jobs, static_cast<int>(paths.size()));
  if (jobs <= 1) {
    for (size_t i = 0; i < paths.size(); ++i) {
      results[i] = analyze_file_with_db(paths[i], db, config);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&]() {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= paths.size()) return;
          results[i] = analyze_file_with_db(paths[i], db, config);
        }
      });
    }
    for (std::thread& t : workers) t.join();
  }
  CorpusStats stats = aggregate_stats(results);
  if (results_out != nullptr) *results_out = std::move(results);
  return stats;
}

CorpusStats aggregate_stats(const std::vector<AnalysisResult>& results) {
  CorpusStats stats;
  stats.n_files = static_cast<int>(results.size());
  int ok = 0, pre = 0, overlap = 0, multi = 0, any = 0;
  double pre_sum = 0, multi_sum = 0;
  int pre_count = 0, multi_count = 0;
  for (const AnalysisResult& r : results) {
    stats.error_breakdown[analysis_status_name(r.status)] += 1;
    if (r.status != AnalysisStatus::Ok) continue;
    ++ok;
    const bool has_pre = r.has_kind(LeakKind::Preprocessing);
    const bool has_overlap = r.has_kind(LeakKind::Overlap);
    const bool has_multi = r.has_kind(LeakKind::MultiTest);
    pre += has_pre;
    overlap += has_overlap;
    multi += has_multi;
    any += has_pre || has_overlap || has_multi;
    const double lines = std::max(1, r.metrics.line_count);
    for (int d : r.metrics.pre_distances) {
      pre_sum += d;
      ++pre_count;
      int bin = std::min(9, static_cast<int>(std::floor(10.0 * d / lines)));
      stats.distance_histogram_pre[static_cast<size_t>(bin)] += 1;
    }
    for (int d : r.metrics.multitest_gaps) {
      multi_sum += d;
      ++multi_count;
      int bin = std::min(9, static_cast<int>(std::floor(10.0 * d / lines)));
      stats.distance_histogram_multitest[static_cast<size_t>(bin)] += 1;
    }
  }
  if (ok > 0) {
    stats.pct_preprocessing = 100.0 * pre / ok;
    stats.pct_overlap = 100.0 * overlap / ok;
    stats.pct_multitest = 100.0 * multi / ok;
    stats.pct_any = 100.0 * any / ok;
  }
  if (pre_count > 0) stats.avg_distance_pre = pre_sum / pre_count;
  if (multi_count > 0) stats.avg_distance_multitest = multi_sum / multi_count;
  return stats;
}

namespace {

ordered_json finding_to_json(const LeakageFinding& f) {
  ordered_json j;
  j["kind"] = leak_kind_name(f.kind);
  j["line"] = f.line;
  j["message"] = f.message;
  if (!f.model.empty()) j["model"] = f.model;
  ordered_json w;
  switch (f.kind) {
    case LeakKind::Preprocessing: {
      w["reduce_line"] = f.reduce_line;
      w["reduce_src"] = f.reduce_src;
      w["reduce_dst"] = f.reduce_dst;
      w["eval_data"] = f.eval_data;
      w["train"] = f.train;
      w["train_line"] = f.train_line;
      w["flow_path"] = f.flow_path;
      break;
    }
    case LeakKind::Overlap: {
      w["train"] = f.train;
      w["train_line"] = f.train_line;
      w["overlapping"] = f.overlapping;
      w["derivation"] = f.rel_tag == RelTag::Dup ? "dup"
                       : f.rel_tag == RelTag::Map ? "map"
                       : f.rel_tag == RelTag::Ref ? "ref" : "flow";
      w["derivation_line"] = f.rel_line;
      break;
    }
    case LeakKind::MultiTest: {
      ordered_json cites = ordered_json::array();
      for (const auto& cite : f.tuples) {
        ordered_json c;
        c["model"] = cite.model;
        c["train"] = cite.train;
        c["validation"] = cite.validation;
        c["eval_lines"] = cite.eval_lines;
        cites.push_back(std::move(c));
      }
      w["tuples"] = std::move(cites);
      break;
    }
  }
  j["witness"] = std::move(w);
  return j;
}

LeakageFinding finding_from_json(const ordered_json& j) {
  LeakageFinding f;
  const std::string kind = j.value("kind", std::string{});
  f.kind = kind == "overlap" ? LeakKind::Overlap
          : kind == "multi_test" ? LeakKind::MultiTest : LeakKind::Preprocessing;
  f.line = j.value("line", 0);
  f.message = j.value("message", std::string{});
  f.model = j.value("model", std::string{});
  if (!j.contains("witness")) return f;
  const auto& w = j["witness"];
  switch (f.kind) {
    case LeakKind::Preprocessing:
      f.reduce_line = w.value("reduce_line", 0);
      f.reduce_src = w.value("reduce_src", -1);
      f.reduce_dst = w.value("reduce_dst", -1);
      f.eval_data = w.value("eval_data", kNoVar);
      f.train = w.value("train", kNoVar);
      f.train_line = w.value("train_line", 0);
      if (w.contains("flow_path")) f.flow_path = w["flow_path"].get<std::vector<int>>();
      break;
    case LeakKind::Overlap:
      f.train = w.value("train", kNoVar);
      f.train_line = w.value("train_line", 0);
      if (w.contains("overlapping"))
        f.overlapping = w["overlapping"].get<std::vector<VarId>>();
      f.rel_tag = w.value("derivation", std::string{}) == "dup" ? RelTag::Dup
                 : w.value("derivation", std::string{}) == "map" ? RelTag::Map
                 : w.value("derivation", std::string{}) == "ref" ? RelTag::Ref
                                                                  : RelTag::Flow;
      f.rel_line = w.value("derivation_line", 0);
      break;
    case LeakKind::MultiTest:
      if (w.contains("tuples")) {
        for (const auto& c : w["tuples"]) {
          LeakageFinding::TupleCite cite;
          cite.model = c.value("model", std::string{});
          cite.train = c.value("train", std::string{});
          if (c.contains("validation"))
            cite.validation = c["validation"].get<std::vector<std::string>>();
          if (c.contains("eval_lines"))
            cite.eval_lines = c["eval_lines"].get<std::vector<int>>();
          f.tuples.push_back(std::move(cite));
        }
      }
      break;
  }
  return f;
}

}  // namespace

std::string render(const AnalysisResult& result, OutputFormat format) {
  if (format == OutputFormat::Json) {
    ordered_json j;
    j["file"] = result.file;
    j["status"] = analysis_status_name(result.status);
    j["findings"] = ordered_json::array();
    for (const LeakageFinding& f : result.findings) {
      j["findings"].push_back(finding_to_json(f));
    }
    if (!result.error.empty()) j["error"] = result.error;
    ordered_json m;
    m["models_trained"] = result.metrics.models_trained;
    m["models_evaluated"] = result.metrics.models_evaluated;
    m["eval_sites"] = result.metrics.eval_sites;
    m["uses_pipeline"] = result.metrics.uses_pipeline;
    m["line_count"] = result.metrics.line_count;
    j["metrics"] = std::move(m);
    j["schema_version"] = 1;
    return j.dump();
  }

  std::string out;
  if (result.status != AnalysisStatus::Ok) {
    out += result.file + ": " + analysis_status_name(result.status) +
           (result.error.empty() ? "" : ": " + result.error) + "\n";
    return out;
  }
  if (result.findings.empty()) {
    out += result.file + ": no leakage detected\n";
    return out;
  }
  for (const LeakageFinding& f : result.findings) {
    out += result.file + ":" + std::to_string(f.line) + ": " +
           leak_kind_label(f.kind) + " leakage — " + f.message + "\n";
    switch (f.kind) {
      case LeakKind::Preprocessing: {
        out += "    reduce at line " + std::to_string(f.reduce_line) +
               ", training at line " + std::to_string(f.train_line) + "\n";
        break;
      }
      case LeakKind::Overlap: {
        out += "    training at line " + std::to_string(f.train_line);
        if (f.rel_line > 0) {
          out += ", related since line " + std::to_string(f.rel_line);
        }
        out += "\n";
        break;
      }
      case LeakKind::MultiTest: {
        for (const auto& cite : f.tuples) {
          out += "    model " + cite.model + " trained on " + cite.train +
                 ", validated at lines ";
          for (size_t i = 0; i < cite.eval_lines.size(); ++i) {
            if (i) out += ", ";
            out += std::to_string(cite.eval_lines[i]);
          }
          out += "\n";
        }
        break;
      }
    }
  }
  return out;
}

AnalysisResult result_from_json(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text);
  AnalysisResult result;
  result.file = j.value("file", std::string{});
  const std::string status = j.value("status", std::string{"ok"});
  result.status = status == "syntax_error" ? AnalysisStatus::SyntaxErr
                 : status == "budget_exceeded" ? AnalysisStatus::BudgetExceeded
                 : status == "format_error" ? AnalysisStatus::FormatError
                                             : AnalysisStatus::Ok;
  result.error = j.value("error", std::string{});
  if (j.contains("findings")) {
    for (const auto& fj : j["findings"]) result.findings.push_back(finding_from_json(fj));
  }
  if (j.contains("metrics")) {
    const auto& m = j["metrics"];
    result.metrics.models_trained = m.value("models_trained", 0);
    result.metrics.models_evaluated = m.value("models_evaluated", 0);
    result.metrics.eval_sites = m.value("eval_sites", 0);
    result.metrics.uses_pipeline = m.value("uses_pipeline", false);
    result.metrics.line_count = m.value("line_count", 0);
  }
  return result;
}

std::string render(const CorpusStats& stats, OutputFormat format) {
  if (format == OutputFormat::Json) {
    ordered_json j;
    j["n_files"] = stats.n_files;
    j["pct_preprocessing"] = stats.pct_preprocessing;
    j["pct_overlap"] = stats.pct_overlap;
    j["pct_multitest"] = stats.pct_multitest;
    j["pct_any"] = stats.pct_any;
    j["avg_distance_pre"] = stats.avg_distance_pre;
    j["avg_distance_multitest"] = stats.avg_distance_multitest;
    j["distance_histogram_pre"] = stats.distance_histogram_pre;
    j["distance_histogram_multitest"] = stats.distance_histogram_multitest;
    j["error_breakdown"] = stats.error_breakdown;
    j["schema_version"] = 1;
    return j.dump();
  }
  char buf[256];
  std::string out;
  out += "files analyzed: " + std::to_string(stats.n_files) + "\n";
  std::snprintf(buf, sizeof(buf),
                "leakage rates (%% of ok files): preprocessing %.1f, overlap %.1f, "
                "multi-test %.1f, any %.1f\n",
                stats.pct_preprocessing, stats.pct_overlap, stats.pct_multitest,
                stats.pct_any);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "avg distance (lines): preprocessing %.1f, multi-test %.1f\n",
                stats.avg_distance_pre, stats.avg_distance_multitest);
  out += buf;
  out += "status breakdown:";
  for (const auto& [status, count] : stats.error_breakdown) {
    out += " " + status + "=" + std::to_string(count);
  }
  out += "\n";
  return out;
}

}  // namespace leaklint
