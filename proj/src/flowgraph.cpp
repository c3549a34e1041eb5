#include "leaklint/flowgraph.hpp"

#include <algorithm>
#include <deque>

namespace leaklint {

const char* edge_kind_name(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Flow: return "flow";
    case EdgeKind::Map: return "map";
    case EdgeKind::Reduce: return "reduce";
    case EdgeKind::Dup: return "dup";
    case EdgeKind::Filter: return "filter";
  }
  return "?";
}

std::string FlowGraph::node_name(int node) const {
  if (node < n_vars && facts != nullptr) return facts->display_name(node);
  size_t idx = static_cast<size_t>(node - n_vars);
  if (idx < field_node_names.size()) return field_node_names[idx];
  return "node#" + std::to_string(node);
}

void FlowGraph::build_adjacency() {
  adj_.assign(static_cast<size_t>(n_nodes), {});
  dataset_adj_.assign(static_cast<size_t>(n_nodes), {});
  for (const FlowEdge& e : edges) {
    adj_[static_cast<size_t>(e.src)].push_back(e.dst);
    if (is_dataset(e.src) && is_dataset(e.dst)) {
      dataset_adj_[static_cast<size_t>(e.src)].push_back(e.dst);
    }
  }
}

const std::vector<bool>& FlowGraph::closure_from(int src, bool dataset_only) const {
  auto& cache = dataset_only ? dataset_reach_cache_ : reach_cache_;
  auto it = cache.find(src);
  if (it != cache.end()) return it->second;
  std::vector<bool> seen(static_cast<size_t>(n_nodes), false);
  std::deque<int> queue;
  seen[static_cast<size_t>(src)] = true;
  queue.push_back(src);
  const auto& adjacency = dataset_only ? dataset_adj_ : adj_;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int next : adjacency[static_cast<size_t>(cur)]) {
      if (!seen[static_cast<size_t>(next)]) {
        seen[static_cast<size_t>(next)] = true;
        queue.push_back(next);
      }
    }
  }
  return cache.emplace(src, std::move(seen)).first->second;
}

bool FlowGraph::reaches(int src, int dst) const {
  if (src < 0 || dst < 0 || src >= n_nodes || dst >= n_nodes) return false;
  if (src == dst) return true;
  return closure_from(src, false)[static_cast<size_t>(dst)];
}

bool FlowGraph::dataset_reaches(int src, int dst) const {
  if (src < 0 || dst < 0 || src >= n_nodes || dst >= n_nodes) return false;
  if (!is_dataset(src) || !is_dataset(dst)) return false;
  if (src == dst) return true;
  return closure_from(src, true)[static_cast<size_t>(dst)];
}

std::vector<int> FlowGraph::dataset_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < n_nodes; ++i) {
    if (is_dataset(i)) out.push_back(i);
  }
  return out;
}

namespace {

struct GraphBuilder {
  const FactBase& fb;
  const PointsTo& pts;
  const TypeMap& tm;
  const SpecDB& db;
  FlowGraph g;
  std::unordered_map<long, int> field_nodes;   // slot key -> node id
  std::vector<bool> is_mask;

  GraphBuilder(const FactBase& f, const PointsTo& p, const TypeMap& t, const SpecDB& d)
      : fb(f), pts(p), tm(t), db(d) {
    g.n_vars = static_cast<int>(fb.vars.size());
    g.facts = &fb;
  }

  bool dataset(VarId v) const { return tm.of(v) == VarClass::Dataset; }

  void edge(int src, int dst, EdgeKind kind, int line, int call_index = -1,
            SplitPart part = SplitPart::None, bool unknown_api = false) {
    if (src < 0 || dst < 0) return;
    // labeled edges keep their guarantees; anything else degrades to flow
    if (kind == EdgeKind::Map || kind == EdgeKind::Dup || kind == EdgeKind::Filter) {
      if (!(src < g.n_vars && dst < g.n_vars && dataset(src) && dataset(dst))) {
        kind = EdgeKind::Flow;
      }
    } else if (kind == EdgeKind::Reduce) {
      if (!(src < g.n_vars && dataset(src))) kind = EdgeKind::Flow;
    }
    FlowEdge e;
    e.src = src;
    e.dst = dst;
    e.kind = kind;
    e.line = line;
    e.call_index = call_index;
    e.split_part = part;
    e.unknown_api = unknown_api;
    g.edges.push_back(e);
  }

  int field_node(int obj, const std::string& attr) {
    auto fit = pts.field_names.find(attr);
    int fid = fit != pts.field_names.end() ? fit->second : 0;
    long key = PointsTo::slot_key(obj, fid);
    auto it = field_nodes.find(key);
    if (it != field_nodes.end()) return it->second;
    int node = g.n_vars + static_cast<int>(g.field_node_names.size());
    g.field_node_names.push_back("obj@" +
                                 std::to_string(pts.objects[static_cast<size_t>(obj)].alloc_line) +
                                 "." + attr);
    field_nodes.emplace(key, node);
    return node;
  }

  void build_call_descriptions() {
    g.call_desc.resize(fb.calls.size());
    for (size_t i = 0; i < fb.calls.size(); ++i) {
      const CallFact& call = fb.calls[i];
      std::string desc;
      if (call.callee.receiver != kNoVar && !call.callee.method.empty()) {
        std::vector<std::string> classes = pts.classes_of(call.callee.receiver);
        if (!classes.empty()) {
          desc = classes.front() + "." + call.callee.method;
        } else {
          desc = fb.display_name(call.callee.receiver) + "." + call.callee.method;
        }
      } else if (!call.callee.dotted.empty()) {
        desc = call.callee.method;
      }
      g.call_desc[i] = std::move(desc);
    }
  }

  void compute_masks() {
    is_mask.assign(fb.vars.size(), false);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const OpFact& op : fb.ops) {
        if (is_mask[static_cast<size_t>(op.target)]) continue;
        bool mask = false;
        if (op.op == OpClass::Compare) {
          for (VarId v : op.operands) mask |= dataset(v);
        } else if (op.op == OpClass::Bool || op.op == OpClass::Unary) {
          for (VarId v : op.operands) mask |= is_mask[static_cast<size_t>(v)];
        }
        if (mask) {
          is_mask[static_cast<size_t>(op.target)] = true;
          changed = true;
        }
      }
      for (const AssignFact& a : fb.assigns) {
        if (!is_mask[static_cast<size_t>(a.target)] &&
            is_mask[static_cast<size_t>(a.source)]) {
          is_mask[static_cast<size_t>(a.target)] = true;
          changed = true;
        }
      }
    }
  }

  // Data-carrying inputs per the spec, with literal containers expanded to
  // their elements (pd.concat([a, b]) flows from a and b).
  std::vector<VarId> data_inputs(const CallFact& call, const ApiSpec& spec) const {
    std::vector<VarId> inputs;
    auto add = [&](VarId v) {
      if (v == kNoVar) return;
      if (std::find(inputs.begin(), inputs.end(), v) == inputs.end()) inputs.push_back(v);
    };
    auto add_expanded = [&](VarId v) {
      if (v == kNoVar) return;
      add(v);
      if (fb.var(v).def_kind == DefKind::Container) {
        for (const ContainerFact& c : fb.containers) {
          if (c.target == v) {
            for (VarId e : c.elements) add(e);
            break;
          }
        }
      }
    };
    if (spec.receiver_is_data) add_expanded(call.callee.receiver);
    if (spec.variadic_data) {
      for (VarId a : call.args) add_expanded(a);
    } else {
      for (int idx : spec.data_args) {
        if (idx >= 0 && static_cast<size_t>(idx) < call.args.size())
          add_expanded(call.args[idx]);
      }
    }
    for (const auto& [name, var] : call.kwargs) {
      if (std::find(spec.data_kwargs.begin(), spec.data_kwargs.end(), name) !=
          spec.data_kwargs.end()) {
        add_expanded(var);
      }
    }
    return inputs;
  }

  std::vector<VarId> label_inputs(const CallFact& call, const ApiSpec& spec) const {
    std::vector<VarId> inputs;
    for (int idx : spec.label_args) {
      if (idx >= 0 && static_cast<size_t>(idx) < call.args.size()) {
        VarId v = call.args[idx];
        if (v != kNoVar && std::find(inputs.begin(), inputs.end(), v) == inputs.end())
          inputs.push_back(v);
      }
    }
    for (const auto& [name, var] : call.kwargs) {
      if (std::find(spec.label_kwargs.begin(), spec.label_kwargs.end(), name) !=
          spec.label_kwargs.end() &&
          std::find(inputs.begin(), inputs.end(), var) == inputs.end()) {
        inputs.push_back(var);
      }
    }
    return inputs;
  }

  std::vector<VarId> all_argument_vars(const CallFact& call) const {
    std::vector<VarId> out;
    if (call.callee.receiver != kNoVar) out.push_back(call.callee.receiver);
    for (VarId a : call.args) out.push_back(a);
    for (const auto& [name, v] : call.kwargs) out.push_back(v);
    return out;
  }

  void run() {
    compute_masks();
    build_call_descriptions();

    for (const AssignFact& a : fb.assigns) edge(a.source, a.target, EdgeKind::Flow, a.line);
    for (const PhiFact& phi : fb.phis) {
      for (VarId op : phi.operands) edge(op, phi.target, EdgeKind::Flow, phi.line);
    }
    for (const ContainerFact& c : fb.containers) {
      for (VarId e : c.elements) edge(e, c.target, EdgeKind::Flow, c.line);
    }
    for (const SubscriptLoadFact& s : fb.sub_loads) {
      if (s.index == IndexKind::ConstStr && dataset(s.object)) {
        // column selection keeps every row of the parent
        edge(s.object, s.target, EdgeKind::Map, s.line);
        continue;
      }
      const bool filter = s.index == IndexKind::Variable && s.index_var != kNoVar &&
                          is_mask[static_cast<size_t>(s.index_var)] && dataset(s.object);
      edge(s.object, s.target, filter ? EdgeKind::Filter : EdgeKind::Flow, s.line);
      if (s.index == IndexKind::Variable && s.index_var != kNoVar && !filter) {
        // fancy indexing may reorder or duplicate, but still derives its rows
        edge(s.index_var, s.target, EdgeKind::Flow, s.line);
      }
    }
    for (const SubscriptStoreFact& s : fb.sub_stores) {
      edge(s.source, s.object, EdgeKind::Flow, s.line);
    }
    for (const AttrStoreFact& a : fb.attr_stores) {
      bool routed = false;
      for (int obj : pts.objects_of(a.object)) {
        edge(a.source, field_node(obj, a.attr), EdgeKind::Flow, a.line);
        routed = true;
      }
      if (!routed) edge(a.source, a.object, EdgeKind::Flow, a.line);
    }
    for (const AttrLoadFact& a : fb.attr_loads) {
      if (a.object == kNoVar) continue;
      for (int obj : pts.objects_of(a.object)) {
        edge(field_node(obj, a.attr), a.target, EdgeKind::Flow, a.line);
      }
      // column/row views of a dataset keep all of its rows
      const bool view = dataset(a.object) && dataset(a.target);
      edge(a.object, a.target, view ? EdgeKind::Map : EdgeKind::Flow, a.line);
    }
    for (const OpFact& op : fb.ops) {
      bool any_dataset = false;
      for (VarId v : op.operands) any_dataset |= dataset(v);
      for (VarId v : op.operands) {
        if (any_dataset && dataset(v)) {
          edge(v, op.target, EdgeKind::Map, op.line);
        } else {
          edge(v, op.target, EdgeKind::Flow, op.line);
        }
      }
    }
    for (size_t i = 0; i < fb.calls.size(); ++i) {
      apply_call(fb.calls[i], static_cast<int>(i));
    }

    finish_nodes();
    g.build_adjacency();
  }

  void apply_call(const CallFact& call, int index) {
    const ApiSpec* spec = pts.call_spec[static_cast<size_t>(index)];
    const VarId result = call.result;
    const VarId recv = call.callee.receiver;

    // container accumulation keeps element flows visible
    if (recv != kNoVar) {
      const std::string& m = call.callee.method;
      if ((m == "append" || m == "add" || m == "extend") && !call.args.empty()) {
        edge(call.args[0], recv, EdgeKind::Flow, call.line, index);
      } else if (m == "insert" && call.args.size() >= 2) {
        edge(call.args[1], recv, EdgeKind::Flow, call.line, index);
      }
    }

    if (spec == nullptr) {
      for (VarId v : all_argument_vars(call)) {
        edge(v, result, EdgeKind::Flow, call.line, index, SplitPart::None,
             /*unknown_api=*/true);
      }
      return;
    }

    std::vector<VarId> data = data_inputs(call, *spec);
    std::vector<VarId> labels = label_inputs(call, *spec);
    const bool result_wanted = spec->result != ResultRole::None && result != kNoVar;

    // the receiver of a transform that is itself the data (df.transform(fn))
    if (data.empty() && spec->kind == ApiKind::MapTransform && recv != kNoVar &&
        dataset(recv)) {
      data.push_back(recv);
    }

    switch (spec->kind) {
      case ApiKind::DatasetSource:
        break;
      case ApiKind::ModelSource:
        for (VarId v : all_argument_vars(call)) edge(v, result, EdgeKind::Flow, call.line, index);
        break;
      case ApiKind::Split: {
        for (VarId v : data) edge(v, result, EdgeKind::Flow, call.line, index);
        for (const SubscriptLoadFact& s : fb.sub_loads) {
          if (s.object != result || s.index != IndexKind::ConstInt) continue;
          long part = s.const_index;
          if (part < 0) continue;
          SplitPart role;
          size_t arg_pos;
          if (!spec->split_train.empty()) {
            auto tr = std::find(spec->split_train.begin(), spec->split_train.end(),
                                static_cast<int>(part));
            auto te = std::find(spec->split_test.begin(), spec->split_test.end(),
                                static_cast<int>(part));
            if (tr != spec->split_train.end()) {
              role = SplitPart::Train;
              arg_pos = static_cast<size_t>(tr - spec->split_train.begin());
            } else if (te != spec->split_test.end()) {
              role = SplitPart::Test;
              arg_pos = static_cast<size_t>(te - spec->split_test.begin());
            } else {
              continue;
            }
          } else {
            role = part % 2 == 0 ? SplitPart::Train : SplitPart::Test;
            arg_pos = static_cast<size_t>(part / 2);
          }
          VarId origin = arg_pos < data.size() ? data[arg_pos]
                        : !data.empty() ? data[0] : kNoVar;
          edge(origin, s.target, EdgeKind::Flow, call.line, index, role);
        }
        break;
      }
      case ApiKind::MapTransform:
        if (result_wanted) {
          for (VarId v : data) {
            edge(v, result, dataset(v) ? EdgeKind::Map : EdgeKind::Flow, call.line, index);
          }
          for (VarId v : labels) edge(v, result, EdgeKind::Flow, call.line, index);
          for (VarId v : all_argument_vars(call)) {
            if (std::find(data.begin(), data.end(), v) == data.end() &&
                std::find(labels.begin(), labels.end(), v) == labels.end()) {
              edge(v, result, EdgeKind::Flow, call.line, index);
            }
          }
        }
        break;
      case ApiKind::FilterTransform:
        for (VarId v : data) {
          edge(v, result, dataset(v) ? EdgeKind::Filter : EdgeKind::Flow, call.line, index);
        }
        if (recv != kNoVar && !spec->receiver_is_data) {
          edge(recv, result, EdgeKind::Flow, call.line, index);
        }
        break;
      case ApiKind::DuplicateTransform:
        for (VarId v : data) {
          edge(v, result, dataset(v) ? EdgeKind::Dup : EdgeKind::Flow, call.line, index);
        }
        for (VarId v : labels) {
          edge(v, result, dataset(v) ? EdgeKind::Dup : EdgeKind::Flow, call.line, index);
        }
        if (recv != kNoVar && !spec->receiver_is_data) {
          edge(recv, result, EdgeKind::Flow, call.line, index);
        }
        break;
      case ApiKind::ReduceTransform: {
        const bool into_receiver = spec->fits_receiver && recv != kNoVar;
        const VarId target = into_receiver ? recv : result;
        for (VarId v : data) {
          edge(v, target, dataset(v) ? EdgeKind::Reduce : EdgeKind::Flow, call.line, index);
        }
        for (VarId v : labels) {
          edge(v, target, dataset(v) ? EdgeKind::Reduce : EdgeKind::Flow, call.line, index);
        }
        if (spec->maps_result && result_wanted) {
          for (VarId v : data) {
            edge(v, result, dataset(v) ? EdgeKind::Map : EdgeKind::Flow, call.line, index);
          }
        }
        if (into_receiver && result_wanted) {
          edge(recv, result, EdgeKind::Flow, call.line, index);
        }
        break;
      }
      case ApiKind::PipelineFit: {
        for (VarId v : data) {
          edge(v, recv, dataset(v) ? EdgeKind::Reduce : EdgeKind::Flow, call.line, index);
        }
        for (VarId v : labels) edge(v, recv, EdgeKind::Flow, call.line, index);
        if (spec->maps_result && result_wanted) {
          for (VarId v : data) {
            edge(v, result, dataset(v) ? EdgeKind::Map : EdgeKind::Flow, call.line, index);
          }
        }
        if (result_wanted && recv != kNoVar) edge(recv, result, EdgeKind::Flow, call.line, index);
        break;
      }
      case ApiKind::Train:
        for (VarId v : data) edge(v, recv, EdgeKind::Flow, call.line, index);
        for (VarId v : labels) edge(v, recv, EdgeKind::Flow, call.line, index);
        if (result_wanted) {
          if (recv != kNoVar) edge(recv, result, EdgeKind::Flow, call.line, index);
          if (spec->result == ResultRole::Dataset) {
            for (VarId v : data) edge(v, result, EdgeKind::Flow, call.line, index);
          }
        }
        break;
      case ApiKind::Eval:
        if (result_wanted) {
          for (VarId v : data) edge(v, result, EdgeKind::Flow, call.line, index);
          for (VarId v : labels) edge(v, result, EdgeKind::Flow, call.line, index);
          if (recv != kNoVar) edge(recv, result, EdgeKind::Flow, call.line, index);
        }
        break;
      case ApiKind::Metric:
        for (VarId v : data) {
          edge(v, result, dataset(v) ? EdgeKind::Reduce : EdgeKind::Flow, call.line, index);
        }
        break;
    }
  }

  void finish_nodes() {
    g.n_nodes = g.n_vars + static_cast<int>(g.field_node_names.size());
    g.node_class.assign(static_cast<size_t>(g.n_nodes), VarClass::Unknown);
    g.node_single_sample.assign(static_cast<size_t>(g.n_nodes), false);
    for (int v = 0; v < g.n_vars; ++v) {
      g.node_class[static_cast<size_t>(v)] = tm.of(v);
      g.node_single_sample[static_cast<size_t>(v)] = tm.is_single_sample(v);
    }
    // a field slot that stores a dataset behaves as a dataset node
    for (const AttrStoreFact& a : fb.attr_stores) {
      if (!dataset(a.source)) continue;
      for (int obj : pts.objects_of(a.object)) {
        int node = field_node(obj, a.attr);
        if (node >= g.n_nodes) {
          // field node created after sizing; extend
          g.node_class.resize(static_cast<size_t>(node) + 1, VarClass::Unknown);
          g.node_single_sample.resize(static_cast<size_t>(node) + 1, false);
          g.n_nodes = node + 1;
        }
        g.node_class[static_cast<size_t>(node)] = VarClass::Dataset;
      }
    }
  }
};

}  // namespace

FlowGraph build_flow_graph(const FactBase& facts, const PointsTo& pts,
                           const TypeMap& types, const SpecDB& db) {
  GraphBuilder builder(facts, pts, types, db);
  builder.run();
  return std::move(builder.g);
}

}  // namespace leaklint
