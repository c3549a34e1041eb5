// Labeled data-flow graph over SSA variables (plus object-field nodes).
#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "leaklint/facts.hpp"
#include "leaklint/pointsto.hpp"
#include "leaklint/typeinf.hpp"

namespace leaklint {

enum class EdgeKind : uint8_t { Flow, Map, Reduce, Dup, Filter };
enum class SplitPart : uint8_t { None, Train, Test };

struct FlowEdge {
  int src = 0;
  int dst = 0;
  EdgeKind kind = EdgeKind::Flow;
  int line = 0;
  SplitPart split_part = SplitPart::None;
  bool unknown_api = false;
  int call_index = -1;  // provenance
};

const char* edge_kind_name(EdgeKind kind);

struct FlowGraph {
  // nodes 0..n_vars-1 are SSA variables; the rest are object-field slots
  int n_vars = 0;
  int n_nodes = 0;
  std::vector<FlowEdge> edges;
  std::vector<VarClass> node_class;
  std::vector<bool> node_single_sample;
  std::vector<std::string> field_node_names;  // for nodes >= n_vars
  std::vector<std::string> call_desc;         // per call index, for witnesses
  const FactBase* facts = nullptr;

  bool is_dataset(int node) const {
    return node >= 0 && node < n_nodes &&
           node_class[static_cast<size_t>(node)] == VarClass::Dataset;
  }
  std::string node_name(int node) const;

  // DataFlow: reachability over all edges (reflexive).
  bool reaches(int src, int dst) const;
  // DatasetFlow: reachability along paths whose nodes are all datasets.
  bool dataset_reaches(int src, int dst) const;
  std::vector<int> dataset_nodes() const;

  void build_adjacency();  // called by build_flow_graph

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<int>> dataset_adj_;
  mutable std::unordered_map<int, std::vector<bool>> reach_cache_;
  mutable std::unordered_map<int, std::vector<bool>> dataset_reach_cache_;
  const std::vector<bool>& closure_from(int src, bool dataset_only) const;
};

FlowGraph build_flow_graph(const FactBase& facts, const PointsTo& pts,
                           const TypeMap& types, const SpecDB& db);

}  // namespace leaklint
