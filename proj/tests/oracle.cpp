#include "oracle.hpp"

#include <algorithm>

namespace leaklint::oracle {
namespace {

std::pair<int, int> norm(int a, int b) { return a <= b ? std::make_pair(a, b) : std::make_pair(b, a); }

bool has(const PairSet& set, int a, int b) { return set.count({a, b}) > 0; }

}  // namespace

PairSet dataflow(const Graph& g) {
  std::vector<std::vector<bool>> reach(static_cast<size_t>(g.n),
                                       std::vector<bool>(static_cast<size_t>(g.n), false));
  for (int i = 0; i < g.n; ++i) reach[static_cast<size_t>(i)][static_cast<size_t>(i)] = true;
  for (const auto& e : g.edges) reach[static_cast<size_t>(e.src)][static_cast<size_t>(e.dst)] = true;
  for (int k = 0; k < g.n; ++k) {
    for (int i = 0; i < g.n; ++i) {
      if (!reach[static_cast<size_t>(i)][static_cast<size_t>(k)]) continue;
      for (int j = 0; j < g.n; ++j) {
        if (reach[static_cast<size_t>(k)][static_cast<size_t>(j)]) {
          reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
        }
      }
    }
  }
  PairSet out;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (reach[static_cast<size_t>(i)][static_cast<size_t>(j)]) out.insert({i, j});
    }
  }
  return out;
}

PairSet datasetflow(const Graph& g) {
  std::vector<std::vector<bool>> reach(static_cast<size_t>(g.n),
                                       std::vector<bool>(static_cast<size_t>(g.n), false));
  for (int i = 0; i < g.n; ++i) {
    if (g.is_dataset[static_cast<size_t>(i)]) {
      reach[static_cast<size_t>(i)][static_cast<size_t>(i)] = true;
    }
  }
  for (const auto& e : g.edges) {
    if (g.is_dataset[static_cast<size_t>(e.src)] && g.is_dataset[static_cast<size_t>(e.dst)]) {
      reach[static_cast<size_t>(e.src)][static_cast<size_t>(e.dst)] = true;
    }
  }
  for (int k = 0; k < g.n; ++k) {
    if (!g.is_dataset[static_cast<size_t>(k)]) continue;
    for (int i = 0; i < g.n; ++i) {
      if (!reach[static_cast<size_t>(i)][static_cast<size_t>(k)]) continue;
      for (int j = 0; j < g.n; ++j) {
        if (reach[static_cast<size_t>(k)][static_cast<size_t>(j)]) {
          reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
        }
      }
    }
  }
  PairSet out;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (reach[static_cast<size_t>(i)][static_cast<size_t>(j)]) out.insert({i, j});
    }
  }
  return out;
}

PairSet reldata(const Graph& g) {
  const PairSet dsflow = datasetflow(g);
  PairSet rel;
  bool changed = true;
  while (changed) {
    changed = false;
    auto add = [&rel, &changed](int a, int b) {
      if (rel.insert(norm(a, b)).second) changed = true;
    };
    // scan nodes and edges in reverse, unlike the engine under test
    for (int a = g.n - 1; a >= 0; --a) {
      if (g.is_dataset[static_cast<size_t>(a)]) add(a, a);
      for (int b = g.n - 1; b >= 0; --b) {
        if (dsflow.count({a, b})) add(a, b);
      }
    }
    for (auto e = g.edges.rbegin(); e != g.edges.rend(); ++e) {
      if (e->kind == 'm') {
        if (!g.is_dataset[static_cast<size_t>(e->src)] ||
            !g.is_dataset[static_cast<size_t>(e->dst)]) {
          continue;
        }
        // (a,c) = map edge; requires (a,c) related as well
        if (!rel.count(norm(e->src, e->dst))) continue;
        for (int b = g.n - 1; b >= 0; --b) {
          if (rel.count(norm(e->src, b))) add(b, e->dst);
        }
      } else if (e->kind == 'd') {
        if (!g.is_dataset[static_cast<size_t>(e->src)] ||
            !g.is_dataset[static_cast<size_t>(e->dst)]) {
          continue;
        }
        const int mid = e->dst;
        for (int b = g.n - 1; b >= 0; --b) {
          if (!rel.count(norm(mid, b))) continue;
          for (int c = g.n - 1; c >= 0; --c) {
            if (rel.count(norm(mid, c))) add(b, c);
          }
        }
      }
    }
  }
  return rel;
}

bool leak_multi(const std::vector<Tuple>& tuples) {
  bool exists_validation = false;
  for (const Tuple& t : tuples) exists_validation |= !t.validation.empty();
  bool forall_no_test = true;
  for (const Tuple& t : tuples) forall_no_test &= t.test.empty();
  return exists_validation && forall_no_test;
}

std::vector<std::string> leak_overlap(const std::vector<Tuple>& tuples,
                                      const PairSet& rel) {
  std::vector<std::string> flagged;
  for (const Tuple& t : tuples) {
    std::vector<int> evals = t.validation;
    evals.insert(evals.end(), t.test.begin(), t.test.end());
    if (evals.empty()) continue;
    bool all = true;
    for (int d : evals) all &= has(rel, norm(d, t.train).first, norm(d, t.train).second);
    if (all) flagged.push_back(t.model);
  }
  std::sort(flagged.begin(), flagged.end());
  return flagged;
}

PairSet leak_pre(const Graph& g, const std::vector<Tuple>& tuples, const PairSet& rel,
                 const PairSet& flow) {
  PairSet witnesses;
  for (const Tuple& t : tuples) {
    std::vector<int> evals = t.validation;
    evals.insert(evals.end(), t.test.begin(), t.test.end());
    for (const auto& e : g.edges) {
      if (e.kind != 'r') continue;
      if (!g.is_dataset[static_cast<size_t>(e.src)]) continue;
      if (!flow.count({e.dst, t.train})) continue;
      for (int d : evals) {
        if (rel.count(norm(d, e.src))) witnesses.insert({e.line, d});
      }
    }
  }
  return witnesses;
}

}  // namespace leaklint::oracle
