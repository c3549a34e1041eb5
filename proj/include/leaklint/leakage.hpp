// Related-data relation, model-data grouping, and the three leakage rules.
#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "leaklint/flowgraph.hpp"

namespace leaklint {

enum class RelTag : uint8_t { Flow, Sym, Ref, Map, Dup };

// Symmetric, reflexive, deliberately non-transitive relation over dataset
// nodes. Pairs are stored normalized (small id first) with the rule that
// first derived them and the source line of the witnessing edge, if any.
struct RelData {
  struct Derivation {
    RelTag tag = RelTag::Flow;
    int line = 0;
  };
  int n_nodes = 0;
  std::unordered_map<long, Derivation> pairs;
  std::vector<std::vector<int>> adjacency;  // symmetric, per node

  static long key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<long>(a) << 24) | static_cast<long>(b);
  }
  bool related(int a, int b) const {
    if (a < 0 || b < 0) return false;
    if (a == b) return pairs.count(key(a, b)) > 0;
    return pairs.count(key(a, b)) > 0;
  }
  const Derivation* derivation(int a, int b) const {
    auto it = pairs.find(key(a, b));
    return it == pairs.end() ? nullptr : &it->second;
  }
  std::vector<std::pair<int, int>> sorted_pairs() const;
};

// Least fixpoint of the five related-data rules over the flow graph.
RelData compute_reldata(const FlowGraph& g);

struct ModelDataTuple {
  std::string model_name;
  int model_object = -1;   // abstract object id; -1 when keyed by variable
  VarId model_var = kNoVar;
  VarId train = kNoVar;
  int train_line = 0;
  int train_order = 0;
  std::vector<VarId> validation;  // sorted
  std::vector<VarId> test;        // sorted
  struct EvalEvent {
    VarId data = kNoVar;
    int line = 0;
    int order = 0;
    bool in_loop = false;
  };
  std::vector<EvalEvent> eval_events;
};

std::vector<ModelDataTuple> compute_model_data(const FlowGraph& g, const RelData& rel,
                                               const FactBase& facts,
                                               const PointsTo& pts, const SpecDB& db);

enum class LeakKind : uint8_t { Preprocessing, Overlap, MultiTest };
const char* leak_kind_name(LeakKind kind);     // "preprocessing" etc.
const char* leak_kind_label(LeakKind kind);    // "multi-test" for rendering

struct LeakageFinding {
  LeakKind kind = LeakKind::Preprocessing;
  int line = 0;          // reduce site / train site / first repeated eval site
  std::string message;   // one-line witness
  std::string model;

  // preprocessing witness: the reduce edge and the path into the training data
  int reduce_line = 0;
  int reduce_src = -1;
  int reduce_dst = -1;
  VarId eval_data = kNoVar;
  std::vector<int> flow_path;  // reduce_dst ... train node ids

  // overlap witness: the related pair per evaluation dataset
  VarId train = kNoVar;
  int train_line = 0;
  std::vector<VarId> overlapping;
  RelTag rel_tag = RelTag::Flow;
  int rel_line = 0;

  // multi-test witness: the validation-only tuples
  struct TupleCite {
    std::string model;
    std::string train;
    std::vector<std::string> validation;
    std::vector<int> eval_lines;
  };
  std::vector<TupleCite> tuples;
};

// One finding when some tuple has validation data and no tuple has test data.
std::optional<LeakageFinding> detect_multi_test(const std::vector<ModelDataTuple>& tuples,
                                                const FactBase& facts);

// One finding per tuple whose evaluation data all overlaps its training data.
std::vector<LeakageFinding> detect_overlap(const std::vector<ModelDataTuple>& tuples,
                                           const RelData& rel, const FactBase& facts);

// One finding per distinct (reduce site, evaluation dataset) whose reduced
// information flows into the tuple's training data.
std::vector<LeakageFinding> detect_preprocessing(const std::vector<ModelDataTuple>& tuples,
                                                 const RelData& rel, const FlowGraph& g);

// Re-checks a finding's witness against the relations it cites.
bool validate_finding(const LeakageFinding& finding,
                      const std::vector<ModelDataTuple>& tuples, const RelData& rel,
                      const FlowGraph& g);

}  // namespace leaklint
