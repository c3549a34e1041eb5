// Independent naive-iteration evaluation of the leakage rule system, used to
// cross-check the production engine. Kept deliberately dumb: explicit
// relation tables, full rescans until nothing changes, reverse iteration
// order. No code is shared with the engine under test.
#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace leaklint::oracle {

struct Graph {
  int n = 0;
  std::vector<bool> is_dataset;
  struct Edge {
    int src = 0;
    int dst = 0;
    char kind = 'f';  // f=flow m=map r=reduce d=dup t=filter
    int line = 0;
  };
  std::vector<Edge> edges;
};

struct Tuple {
  std::string model;
  int train = -1;
  int train_line = 0;
  std::vector<int> validation;
  std::vector<int> test;
};

using PairSet = std::set<std::pair<int, int>>;

// Reflexive transitive closure over all edges.
PairSet dataflow(const Graph& g);
// Closure restricted to paths whose nodes are all datasets.
PairSet datasetflow(const Graph& g);
// Naive fixpoint of the five related-data rules (pairs normalized a <= b).
PairSet reldata(const Graph& g);

bool leak_multi(const std::vector<Tuple>& tuples);
// Names of models whose evaluation data all relates to their training data.
std::vector<std::string> leak_overlap(const std::vector<Tuple>& tuples,
                                      const PairSet& rel);
// Distinct (reduce-edge line, evaluation dataset) pairs with leaking flows.
PairSet leak_pre(const Graph& g, const std::vector<Tuple>& tuples, const PairSet& rel,
                 const PairSet& flow);

}  // namespace leaklint::oracle
