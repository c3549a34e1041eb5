#include "leaklint/leakage.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace leaklint {

const char* leak_kind_name(LeakKind kind) {
  switch (kind) {
    case LeakKind::Preprocessing: return "preprocessing";
    case LeakKind::Overlap: return "overlap";
    case LeakKind::MultiTest: return "multi_test";
  }
  return "?";
}

const char* leak_kind_label(LeakKind kind) {
  switch (kind) {
    case LeakKind::Preprocessing: return "preprocessing";
    case LeakKind::Overlap: return "overlap";
    case LeakKind::MultiTest: return "multi-test";
  }
  return "?";
}

std::vector<std::pair<int, int>> RelData::sorted_pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(pairs.size());
  for (const auto& [key, der] : pairs) {
    out.emplace_back(static_cast<int>(key >> 24), static_cast<int>(key & 0xFFFFFF));
  }
  std::sort(out.begin(), out.end());
  return out;
}

RelData compute_reldata(const FlowGraph& g) {
  RelData rel;
  rel.n_nodes = g.n_nodes;
  rel.adjacency.assign(static_cast<size_t>(g.n_nodes), {});

  std::vector<std::pair<int, int>> delta;
  auto add = [&rel, &delta](int a, int b, RelTag tag, int line) {
    long key = RelData::key(a, b);
    auto [it, inserted] = rel.pairs.try_emplace(key, RelData::Derivation{tag, line});
    if (!inserted) return;
    if (a != b) {
      rel.adjacency[static_cast<size_t>(a)].push_back(b);
      rel.adjacency[static_cast<size_t>(b)].push_back(a);
    } else {
      rel.adjacency[static_cast<size_t>(a)].push_back(a);
    }
    delta.emplace_back(a, b);
  };

  const std::vector<int> datasets = g.dataset_nodes();

  // reldata/ref
  for (int d : datasets) add(d, d, RelTag::Ref, 0);
  // reldata/flow over DatasetFlow
  for (int a : datasets) {
    for (int b : datasets) {
      if (a != b && g.dataset_reaches(a, b)) add(a, b, RelTag::Flow, 0);
    }
  }

  // map and dup edges between dataset nodes
  struct LabeledEdge {
    int src, dst, line;
  };
  std::vector<LabeledEdge> map_edges, dup_edges;
  for (const FlowEdge& e : g.edges) {
    if (e.kind == EdgeKind::Map && g.is_dataset(e.src) && g.is_dataset(e.dst)) {
      map_edges.push_back({e.src, e.dst, e.line});
    } else if (e.kind == EdgeKind::Dup && g.is_dataset(e.src) && g.is_dataset(e.dst)) {
      dup_edges.push_back({e.src, e.dst, e.line});
    }
  }

  // semi-naive closure of reldata/map and reldata/dup: both rules fire per
  // newly-related neighbor of the edge endpoint
  size_t cursor = 0;
  while (cursor < delta.size()) {
    size_t end = delta.size();
    for (size_t i = cursor; i < end; ++i) {
      auto [x, y] = delta[i];
      for (int pick = 0; pick < (x == y ? 1 : 2); ++pick) {
        int a = pick == 0 ? x : y;
        int b = pick == 0 ? y : x;
        // a newly related to b
        for (const LabeledEdge& e : map_edges) {
          // premise set: (src, b) related, (src, dst) related, (src, dst) map
          if (e.src == a && rel.related(e.src, e.dst)) add(b, e.dst, RelTag::Map, e.line);
          if (e.dst == a && rel.related(e.src, e.dst) && rel.related(e.src, b)) {
            add(b, e.dst, RelTag::Map, e.line);
          }
        }
        for (const LabeledEdge& e : dup_edges) {
          if (e.dst != a && e.dst != b) continue;
          // premises: (src, mid) dup edge; (mid, u), (mid, v) related
          int mid = e.dst;
          int other = mid == a ? b : a;
          const std::vector<int> neighbors = rel.adjacency[static_cast<size_t>(mid)];
          for (int v : neighbors) {
            add(other, v, RelTag::Dup, e.line);
          }
        }
      }
    }
    cursor = end;
  }
  return rel;
}

namespace {

struct ModelKey {
  int object = -1;
  VarId var = kNoVar;
  bool operator==(const ModelKey& other) const {
    return object == other.object && var == other.var;
  }
  bool operator<(const ModelKey& other) const {
    if (object != other.object) return object < other.object;
    return var < other.var;
  }
};

std::string pick_model_name(const FactBase& fb, const PointsTo& pts, const ModelKey& key,
                            VarId receiver) {
  if (receiver != kNoVar && !fb.var(receiver).is_temp) return fb.display_name(receiver);
  if (key.object >= 0) {
    for (size_t v = 0; v < fb.vars.size(); ++v) {
      if (fb.var(static_cast<VarId>(v)).is_temp) continue;
      const auto& objs = pts.objects_of(static_cast<VarId>(v));
      if (std::binary_search(objs.begin(), objs.end(), key.object)) {
        return fb.display_name(static_cast<VarId>(v));
      }
    }
  }
  return fb.display_name(receiver);
}

}  // namespace

std::vector<ModelDataTuple> compute_model_data(const FlowGraph& g, const RelData& rel,
                                               const FactBase& facts,
                                               const PointsTo& pts, const SpecDB& db) {
  (void)db;
  struct TrainEvent {
    ModelKey key;
    VarId receiver;
    VarId data;
    int line, order;
  };
  struct EvalSite {
    ModelKey key;
    VarId data;
    int line, order;
    bool in_loop;
    int site_id;  // one per call fact, shared across pointed-to models
  };
  std::vector<TrainEvent> trains;
  std::vector<EvalSite> evals;

  auto data_of = [&facts](const CallFact& call, const ApiSpec& spec) -> VarId {
    if (spec.receiver_is_data && call.callee.receiver != kNoVar) return call.callee.receiver;
    if (spec.variadic_data && !call.args.empty()) return call.args[0];
    for (int idx : spec.data_args) {
      if (idx >= 0 && static_cast<size_t>(idx) < call.args.size()) return call.args[idx];
    }
    for (const auto& [name, var] : call.kwargs) {
      if (std::find(spec.data_kwargs.begin(), spec.data_kwargs.end(), name) !=
          spec.data_kwargs.end()) {
        return var;
      }
    }
    return kNoVar;
  };

  for (size_t i = 0; i < facts.calls.size(); ++i) {
    const CallFact& call = facts.calls[i];
    const ApiSpec* spec = pts.call_spec[i];
    if (spec == nullptr || call.callee.receiver == kNoVar) continue;
    const bool is_train = spec->kind == ApiKind::Train || spec->kind == ApiKind::PipelineFit;
    const bool is_eval = spec->kind == ApiKind::Eval;
    if (!is_train && !is_eval) continue;
    VarId data = data_of(call, *spec);
    if (data == kNoVar) continue;

    std::vector<ModelKey> keys;
    const auto& objs = pts.objects_of(call.callee.receiver);
    if (objs.empty()) {
      keys.push_back(ModelKey{-1, call.callee.receiver});
    } else {
      for (int obj : objs) keys.push_back(ModelKey{obj, kNoVar});
    }
    for (const ModelKey& key : keys) {
      if (is_train) {
        trains.push_back({key, call.callee.receiver, data, call.line, call.order});
      } else {
        // hand-built single samples are predictions, not evaluation data
        if (g.node_single_sample[static_cast<size_t>(data)]) continue;
        if (!g.is_dataset(data)) continue;
        evals.push_back({key, data, call.line, call.order, call.in_loop,
                         static_cast<int>(i)});
      }
    }
  }

  // data evaluated at two distinct sites is repeatedly evaluated when the two
  // sites' datasets are the same or related
  std::vector<bool> repeated(facts.vars.size(), false);
  for (size_t i = 0; i < evals.size(); ++i) {
    for (size_t j = i + 1; j < evals.size(); ++j) {
      if (evals[i].site_id == evals[j].site_id) continue;
      if (rel.related(evals[i].data, evals[j].data)) {
        repeated[static_cast<size_t>(evals[i].data)] = true;
        repeated[static_cast<size_t>(evals[j].data)] = true;
      }
    }
  }

  std::sort(trains.begin(), trains.end(), [](const TrainEvent& a, const TrainEvent& b) {
    if (!(a.key == b.key)) return a.key < b.key;
    return a.order < b.order;
  });

  std::vector<ModelDataTuple> tuples;
  for (const TrainEvent& train : trains) {
    ModelDataTuple t;
    t.model_object = train.key.object;
    t.model_var = train.receiver;
    t.model_name = pick_model_name(facts, pts, train.key, train.receiver);
    t.train = train.data;
    t.train_line = train.line;
    t.train_order = train.order;
    // the tuple owns eval sites up to the next training of the same object
    int next_order = std::numeric_limits<int>::max();
    for (const TrainEvent& other : trains) {
      if (other.key == train.key && other.order > train.order) {
        next_order = std::min(next_order, other.order);
      }
    }
    for (const EvalSite& e : evals) {
      if (!(e.key == train.key)) continue;
      if (e.order < train.order || e.order >= next_order) continue;
      t.eval_events.push_back({e.data, e.line, e.order, e.in_loop});
      const bool validation = e.in_loop || repeated[static_cast<size_t>(e.data)];
      auto& bucket = validation ? t.validation : t.test;
      if (std::find(bucket.begin(), bucket.end(), e.data) == bucket.end()) {
        bucket.push_back(e.data);
      }
    }
    std::sort(t.validation.begin(), t.validation.end());
    std::sort(t.test.begin(), t.test.end());
    tuples.push_back(std::move(t));
  }
  std::sort(tuples.begin(), tuples.end(),
            [](const ModelDataTuple& a, const ModelDataTuple& b) {
              if (a.train_order != b.train_order) return a.train_order < b.train_order;
              return a.model_name < b.model_name;
            });
  return tuples;
}

std::optional<LeakageFinding> detect_multi_test(const std::vector<ModelDataTuple>& tuples,
                                                const FactBase& facts) {
  bool any_validation = false;
  for (const ModelDataTuple& t : tuples) any_validation |= !t.validation.empty();
  bool all_test_empty = true;
  for (const ModelDataTuple& t : tuples) all_test_empty &= t.test.empty();
  if (!any_validation || !all_test_empty) return std::nullopt;

  LeakageFinding f;
  f.kind = LeakKind::MultiTest;
  int first_line = 0;
  for (const ModelDataTuple& t : tuples) {
    if (t.validation.empty()) continue;
    LeakageFinding::TupleCite cite;
    cite.model = t.model_name;
    cite.train = facts.display_name(t.train);
    for (VarId v : t.validation) cite.validation.push_back(facts.display_name(v));
    for (const auto& e : t.eval_events) {
      if (std::find(t.validation.begin(), t.validation.end(), e.data) !=
          t.validation.end()) {
        cite.eval_lines.push_back(e.line);
        if (first_line == 0 || e.line < first_line) first_line = e.line;
      }
    }
    std::sort(cite.eval_lines.begin(), cite.eval_lines.end());
    cite.eval_lines.erase(std::unique(cite.eval_lines.begin(), cite.eval_lines.end()),
                          cite.eval_lines.end());
    f.tuples.push_back(std::move(cite));
  }
  f.line = first_line;
  std::string names;
  std::vector<std::string> seen;
  for (const auto& cite : f.tuples) {
    if (std::find(seen.begin(), seen.end(), cite.model) != seen.end()) continue;
    seen.push_back(cite.model);
    if (!names.empty()) names += ", ";
    names += cite.model;
  }
  f.message = "evaluation data is reused across models (" + names +
              ") and no independent test data remains";
  return f;
}

std::vector<LeakageFinding> detect_overlap(const std::vector<ModelDataTuple>& tuples,
                                           const RelData& rel, const FactBase& facts) {
  std::vector<LeakageFinding> out;
  for (const ModelDataTuple& t : tuples) {
    std::vector<VarId> eval_data = t.validation;
    eval_data.insert(eval_data.end(), t.test.begin(), t.test.end());
    if (eval_data.empty()) continue;  // an untested model cannot overlap
    bool all_related = true;
    for (VarId d : eval_data) all_related &= rel.related(d, t.train);
    if (!all_related) continue;

    LeakageFinding f;
    f.kind = LeakKind::Overlap;
    f.line = t.train_line;
    f.model = t.model_name;
    f.train = t.train;
    f.train_line = t.train_line;
    std::sort(eval_data.begin(), eval_data.end());
    f.overlapping = eval_data;
    if (const RelData::Derivation* der = rel.derivation(eval_data.front(), t.train)) {
      f.rel_tag = der->tag;
      f.rel_line = der->line;
    }
    std::string evals;
    for (VarId d : eval_data) {
      if (!evals.empty()) evals += ", ";
      evals += facts.display_name(d);
    }
    f.message = "model " + f.model + " is evaluated only on data (" + evals +
                ") that shares rows with its training data " +
                facts.display_name(t.train);
    if (f.rel_tag == RelTag::Dup && f.rel_line > 0) {
      f.message += " (rows duplicated at line " + std::to_string(f.rel_line) + ")";
    }
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

std::vector<int> shortest_path(const FlowGraph& g, int from, int to) {
  if (from == to) return {from};
  std::vector<int> parent(static_cast<size_t>(g.n_nodes), -1);
  std::deque<int> queue{from};
  std::vector<bool> seen(static_cast<size_t>(g.n_nodes), false);
  seen[static_cast<size_t>(from)] = true;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (const FlowEdge& e : g.edges) {
      if (e.src != cur) continue;
      if (seen[static_cast<size_t>(e.dst)]) continue;
      seen[static_cast<size_t>(e.dst)] = true;
      parent[static_cast<size_t>(e.dst)] = cur;
      if (e.dst == to) {
        std::vector<int> path{to};
        int node = to;
        while (parent[static_cast<size_t>(node)] != -1) {
          node = parent[static_cast<size_t>(node)];
          path.push_back(node);
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(e.dst);
    }
  }
  return {};
}

}  // namespace

std::vector<LeakageFinding> detect_preprocessing(const std::vector<ModelDataTuple>& tuples,
                                                 const RelData& rel, const FlowGraph& g) {
  std::vector<LeakageFinding> out;
  auto already_reported = [&out](int line, VarId eval_data) {
    for (const LeakageFinding& f : out) {
      if (f.reduce_line == line && f.eval_data == eval_data) return true;
    }
    return false;
  };
  for (const ModelDataTuple& t : tuples) {
    std::vector<VarId> eval_data = t.validation;
    eval_data.insert(eval_data.end(), t.test.begin(), t.test.end());
    std::sort(eval_data.begin(), eval_data.end());
    if (eval_data.empty()) continue;
    for (const FlowEdge& e : g.edges) {
      if (e.kind != EdgeKind::Reduce) continue;
      if (!g.reaches(e.dst, t.train)) continue;
      for (VarId d : eval_data) {
        if (!rel.related(d, e.src)) continue;
        if (already_reported(e.line, d)) continue;
        LeakageFinding f;
        f.kind = LeakKind::Preprocessing;
        f.line = e.line;
        f.model = t.model_name;
        f.reduce_line = e.line;
        f.reduce_src = e.src;
        f.reduce_dst = e.dst;
        f.eval_data = d;
        f.train = t.train;
        f.train_line = t.train_line;
        f.flow_path = shortest_path(g, e.dst, t.train);
        std::string via;
        if (e.call_index >= 0 &&
            static_cast<size_t>(e.call_index) < g.call_desc.size() &&
            !g.call_desc[static_cast<size_t>(e.call_index)].empty()) {
          via = " via " + g.call_desc[static_cast<size_t>(e.call_index)];
        }
        f.message = "test data distribution flows into training" + via +
                    " (reduced from " + g.node_name(e.src) + ", related to " +
                    g.node_name(d) + ")";
        out.push_back(std::move(f));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const LeakageFinding& a, const LeakageFinding& b) {
    if (a.reduce_line != b.reduce_line) return a.reduce_line < b.reduce_line;
    return a.eval_data < b.eval_data;
  });
  return out;
}

bool validate_finding(const LeakageFinding& finding,
                      const std::vector<ModelDataTuple>& tuples, const RelData& rel,
                      const FlowGraph& g) {
  switch (finding.kind) {
    case LeakKind::Preprocessing: {
      if (!rel.related(finding.eval_data, finding.reduce_src)) return false;
      if (!g.reaches(finding.reduce_dst, finding.train)) return false;
      bool edge_exists = false;
      for (const FlowEdge& e : g.edges) {
        edge_exists |= e.kind == EdgeKind::Reduce && e.src == finding.reduce_src &&
                       e.dst == finding.reduce_dst && e.line == finding.reduce_line;
      }
      return edge_exists;
    }
    case LeakKind::Overlap: {
      if (finding.overlapping.empty()) return false;
      for (VarId d : finding.overlapping) {
        if (!rel.related(d, finding.train)) return false;
      }
      return true;
    }
    case LeakKind::MultiTest: {
      bool any_validation = false, all_test_empty = true;
      for (const ModelDataTuple& t : tuples) {
        any_validation |= !t.validation.empty();
        all_test_empty &= t.test.empty();
      }
      return any_validation && all_test_empty && !finding.tuples.empty();
    }
  }
  return false;
}

}  // namespace leaklint
