#include "leaklint/typeinf.hpp"

#include <algorithm>

namespace leaklint {

const char* var_class_name(VarClass c) {
  switch (c) {
    case VarClass::Unknown: return "unknown";
    case VarClass::Dataset: return "dataset";
    case VarClass::Model: return "model";
    case VarClass::Scalar: return "scalar";
  }
  return "?";
}

namespace {

struct Inference {
  const FactBase& fb;
  const SpecDB& db;
  const PointsTo& pts;
  TypeMap tm;
  std::vector<bool> poisoned;
  bool changed = false;

  Inference(const FactBase& f, const SpecDB& d, const PointsTo& p)
      : fb(f), db(d), pts(p) {
    tm.classification.resize(fb.vars.size(), VarClass::Unknown);
    tm.provenance.resize(fb.vars.size());
    tm.single_sample.resize(fb.vars.size(), false);
    tm.unknown_api.resize(fb.vars.size(), false);
    poisoned.resize(fb.vars.size(), false);
  }

  VarClass of(VarId v) const { return tm.of(v); }

  void set(VarId v, VarClass cls, const std::string& why) {
    if (v == kNoVar || cls == VarClass::Unknown) return;
    size_t i = static_cast<size_t>(v);
    if (poisoned[i]) return;
    VarClass cur = tm.classification[i];
    if (cur == cls) return;
    if (cur == VarClass::Unknown) {
      tm.classification[i] = cls;
      tm.provenance[i] = why;
      changed = true;
      return;
    }
    const bool dm_conflict =
        (cur == VarClass::Dataset && cls == VarClass::Model) ||
        (cur == VarClass::Model && cls == VarClass::Dataset);
    if (dm_conflict) {
      poisoned[i] = true;
      tm.classification[i] = VarClass::Unknown;
      tm.provenance[i] = "conflicting dataset/model evidence";
      tm.diagnostics.push_back("variable '" + fb.display_name(v) +
                               "' has conflicting dataset/model evidence (" +
                               tm.provenance[i] + " vs " + why + ")");
      changed = true;
    }
    // other disagreements keep the earliest classification
  }

  void mark_single(VarId v) {
    if (v == kNoVar) return;
    size_t i = static_cast<size_t>(v);
    if (!tm.single_sample[i]) {
      tm.single_sample[i] = true;
      changed = true;
    }
  }

  void mark_unknown_api(VarId v) {
    if (v == kNoVar) return;
    size_t i = static_cast<size_t>(v);
    if (!tm.unknown_api[i]) {
      tm.unknown_api[i] = true;
      changed = true;
    }
  }

  bool literal_defined(VarId v) const {
    return v != kNoVar && fb.var(v).def_kind == DefKind::Literal;
  }

  static bool is_metadata_attr(const std::string& attr) {
    return attr == "shape" || attr == "columns" || attr == "dtypes" ||
           attr == "index" || attr == "size" || attr == "ndim" || attr == "dtype" ||
           attr == "empty" || attr == "name";
  }

  // Data-carrying inputs of a spec-matched call: receiver when the spec says
  // the receiver holds the rows, plus the positional/keyword data and label
  // arguments.
  std::vector<VarId> data_inputs(const CallFact& call, const ApiSpec& spec) const {
    std::vector<VarId> inputs;
    auto add = [&inputs](VarId v) {
      if (v != kNoVar && std::find(inputs.begin(), inputs.end(), v) == inputs.end())
        inputs.push_back(v);
    };
    if (spec.receiver_is_data && call.callee.receiver != kNoVar) {
      add(call.callee.receiver);
    }
    if (spec.variadic_data) {
      for (VarId a : call.args) add(a);
    } else {
      for (int idx : spec.data_args) {
        if (idx >= 0 && static_cast<size_t>(idx) < call.args.size()) add(call.args[idx]);
      }
      for (int idx : spec.label_args) {
        if (idx >= 0 && static_cast<size_t>(idx) < call.args.size()) add(call.args[idx]);
      }
    }
    for (const auto& [name, var] : call.kwargs) {
      bool is_data = std::find(spec.data_kwargs.begin(), spec.data_kwargs.end(), name) !=
                     spec.data_kwargs.end();
      bool is_label = std::find(spec.label_kwargs.begin(), spec.label_kwargs.end(),
                                name) != spec.label_kwargs.end();
      if (is_data || is_label) add(var);
    }
    return inputs;
  }

  static bool seeds_arguments(ApiKind kind, const ApiSpec& spec) {
    switch (kind) {
      case ApiKind::Train: case ApiKind::Eval: case ApiKind::Split:
      case ApiKind::DuplicateTransform: case ApiKind::PipelineFit:
      case ApiKind::Metric:
        return true;
      case ApiKind::ReduceTransform:
        return spec.fits_receiver;  // transformer fits take real datasets
      default:
        return false;
    }
  }

  void seed_argument(VarId v) {
    if (v == kNoVar) return;
    if (literal_defined(v)) return;  // scalars passed to data slots stay scalars
    if (of(v) == VarClass::Model) return;
    if (fb.var(v).def_kind == DefKind::Container && of(v) == VarClass::Unknown) {
      // a literal container in a data slot is a hand-built sample
      set(v, VarClass::Dataset, "literal container in data argument position");
      mark_single(v);
      return;
    }
    set(v, VarClass::Dataset, "dataset argument of a modeled call");
  }

  void run() {
    do {
      changed = false;
      pass();
    } while (changed);
  }

  void pass() {
    for (const LiteralFact& lit : fb.literals) {
      set(lit.target, VarClass::Scalar, "literal");
    }
    for (size_t i = 0; i < fb.calls.size(); ++i) apply_call(fb.calls[i], i);
    for (const AssignFact& a : fb.assigns) {
      set(a.target, of(a.source), "assignment copy");
      if (tm.is_single_sample(a.source)) mark_single(a.target);
      if (a.source != kNoVar && tm.unknown_api[static_cast<size_t>(a.source)])
        mark_unknown_api(a.target);
    }
    for (const PhiFact& phi : fb.phis) {
      bool any_dataset = false, any_model = false, any_scalar = false;
      for (VarId op : phi.operands) {
        VarClass c = of(op);
        any_dataset |= c == VarClass::Dataset;
        any_model |= c == VarClass::Model;
        any_scalar |= c == VarClass::Scalar;
      }
      if (any_dataset) set(phi.target, VarClass::Dataset, "phi of datasets");
      if (any_model) set(phi.target, VarClass::Model, "phi of models");
      if (!any_dataset && !any_model && any_scalar)
        set(phi.target, VarClass::Scalar, "phi of scalars");
    }
    for (const SubscriptLoadFact& s : fb.sub_loads) {
      if (of(s.object) == VarClass::Dataset) {
        set(s.target, VarClass::Dataset, "subscript of a dataset");
        if (s.single_row_slice || tm.is_single_sample(s.object)) mark_single(s.target);
      }
    }
    for (const AttrLoadFact& a : fb.attr_loads) {
      if (a.object == kNoVar) continue;
      // attributes of a dataset are column/row views unless they are known
      // metadata accessors
      if (of(a.object) == VarClass::Dataset && !is_metadata_attr(a.attr)) {
        set(a.target, VarClass::Dataset, "dataset view attribute");
        if (tm.is_single_sample(a.object)) mark_single(a.target);
      }
    }
    for (const ContainerFact& c : fb.containers) {
      bool any_dataset = false;
      for (VarId e : c.elements) any_dataset |= of(e) == VarClass::Dataset;
      if (any_dataset) set(c.target, VarClass::Dataset, "container holding datasets");
    }
    for (const OpFact& op : fb.ops) {
      bool any_dataset = false;
      bool all_scalar = !op.operands.empty();
      bool all_single = true;
      for (VarId v : op.operands) {
        any_dataset |= of(v) == VarClass::Dataset;
        all_scalar &= of(v) == VarClass::Scalar;
        if (of(v) == VarClass::Dataset && !tm.is_single_sample(v)) all_single = false;
      }
      if (any_dataset) {
        set(op.target, VarClass::Dataset, "row-aligned operator result");
        if (all_single) mark_single(op.target);
      } else if (all_scalar) {
        set(op.target, VarClass::Scalar, "operator over scalars");
      }
    }
    // datasets appended into accumulator containers
    for (const CallFact& call : fb.calls) {
      if (call.callee.receiver == kNoVar) continue;
      const std::string& m = call.callee.method;
      if ((m == "append" || m == "add" || m == "extend") && !call.args.empty() &&
          of(call.args[0]) == VarClass::Dataset) {
        set(call.callee.receiver, VarClass::Dataset, "accumulates datasets");
      }
    }
  }

  void apply_call(const CallFact& call, size_t index) {
    const ApiSpec* spec = pts.call_spec[index];
    if (spec == nullptr) {
      // unmodeled call: a dataset argument or receiver makes the result a
      // dataset connected by a plain flow edge, with a note on the result
      bool any_dataset = of(call.callee.receiver) == VarClass::Dataset;
      bool all_single = true;
      if (of(call.callee.receiver) == VarClass::Dataset &&
          !tm.is_single_sample(call.callee.receiver)) {
        all_single = false;
      }
      for (VarId a : call.args) {
        if (of(a) == VarClass::Dataset) {
          any_dataset = true;
          if (!tm.is_single_sample(a)) all_single = false;
        }
      }
      for (const auto& [name, a] : call.kwargs) {
        if (of(a) == VarClass::Dataset) {
          any_dataset = true;
          if (!tm.is_single_sample(a)) all_single = false;
        }
      }
      if (any_dataset) {
        set(call.result, VarClass::Dataset, "unknown API over datasets");
        mark_unknown_api(call.result);
        if (all_single) mark_single(call.result);
      }
      return;
    }

    if (seeds_arguments(spec->kind, *spec)) {
      for (VarId v : data_inputs(call, *spec)) seed_argument(v);
    }

    const std::vector<VarId> inputs = data_inputs(call, *spec);
    bool any_dataset_input = false;
    bool all_single = true;
    for (VarId v : inputs) {
      if (of(v) == VarClass::Dataset) {
        any_dataset_input = true;
        if (!tm.is_single_sample(v)) all_single = false;
      }
    }

    switch (spec->kind) {
      case ApiKind::DatasetSource:
        set(call.result, VarClass::Dataset, std::string("result of ") + spec->name);
        break;
      case ApiKind::ModelSource:
        set(call.result, VarClass::Model, std::string("constructor ") + spec->name);
        break;
      case ApiKind::Split:
        set(call.result, VarClass::Dataset, "split result");
        break;
      case ApiKind::MapTransform:
      case ApiKind::FilterTransform:
      case ApiKind::DuplicateTransform:
        if (spec->result == ResultRole::Dataset && any_dataset_input) {
          set(call.result, VarClass::Dataset, std::string(api_kind_name(spec->kind)) +
                                                  " result of " + spec->name);
          if (all_single) mark_single(call.result);
        }
        break;
      case ApiKind::ReduceTransform:
        if (spec->maps_result || spec->result == ResultRole::Dataset) {
          if (any_dataset_input) {
            set(call.result, VarClass::Dataset, "transformed dataset");
          }
        } else if (spec->result == ResultRole::Self) {
          set(call.result, VarClass::Model, "fitted transformer");
        } else if (spec->result == ResultRole::Scalar && any_dataset_input) {
          set(call.result, VarClass::Scalar, "reduction to a scalar");
        }
        break;
      case ApiKind::Metric:
        set(call.result, VarClass::Scalar, "metric value");
        break;
      case ApiKind::Eval:
        if (spec->result == ResultRole::Scalar) {
          set(call.result, VarClass::Scalar, "evaluation score");
        } else if (any_dataset_input) {
          set(call.result, VarClass::Dataset, "predictions");
          if (all_single) mark_single(call.result);
        }
        break;
      case ApiKind::Train:
      case ApiKind::PipelineFit:
        if (spec->result == ResultRole::Dataset) {
          if (any_dataset_input) set(call.result, VarClass::Dataset, "fit-predict labels");
        } else {
          set(call.result, VarClass::Model, "fitted model");
        }
        break;
    }
  }
};

}  // namespace

TypeMap infer(const FactBase& facts, const SpecDB& db, const PointsTo& pts) {
  Inference inf(facts, db, pts);
  inf.run();
  return std::move(inf.tm);
}

}  // namespace leaklint
