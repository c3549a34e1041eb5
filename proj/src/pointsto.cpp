#include "leaklint/pointsto.hpp"

#include <algorithm>

namespace leaklint {
namespace {

// Variable names carry the inline clone suffix ("score$L12n3"); the chain of
// call-site markers is the context string of objects allocated there.
std::string context_of_name(const std::string& name) {
  std::string ctx;
  size_t pos = 0;
  while ((pos = name.find("$L", pos)) != std::string::npos) {
    size_t end = pos + 2;
    while (end < name.size() && name[end] != '$') ++end;
    if (!ctx.empty()) ctx += ">";
    ctx += name.substr(pos + 1, end - pos - 1);
    pos = end;
  }
  return ctx;
}

struct Solver {
  const FactBase& fb;
  const SpecDB& db;
  long budget;
  long steps = 0;
  PointsTo pts;
  bool changed = false;

  Solver(const FactBase& f, const SpecDB& d, long b) : fb(f), db(d), budget(b) {
    pts.var_objects.resize(fb.vars.size());
    pts.call_spec.resize(fb.calls.size(), nullptr);
    pts.call_alloc.resize(fb.calls.size(), -1);
  }

  void spend() {
    if (++steps > budget) {
      throw AnalysisBudgetExceeded("points-to propagation exceeded budget of " +
                                   std::to_string(budget) + " steps");
    }
  }

  bool add_object(std::vector<int>& set, int obj) {
    spend();
    auto it = std::lower_bound(set.begin(), set.end(), obj);
    if (it != set.end() && *it == obj) return false;
    set.insert(it, obj);
    changed = true;
    return true;
  }

  bool include(std::vector<int>& dst, const std::vector<int>& src) {
    bool any = false;
    for (int obj : src) any |= add_object(dst, obj);
    return any;
  }

  std::vector<int>& var_set(VarId v) { return pts.var_objects[static_cast<size_t>(v)]; }

  int field_id(const std::string& attr) {
    auto [it, inserted] = pts.field_names.try_emplace(attr,
        static_cast<int>(pts.field_names.size()) + 1);
    return it->second;
  }

  std::vector<int>& slot(int obj, int field) {
    return pts.slot_objects[PointsTo::slot_key(obj, field)];
  }

  int allocate(int line, const std::string& cls, bool container, const std::string& ctx) {
    AbstractObject obj;
    obj.id = static_cast<int>(pts.objects.size());
    obj.alloc_line = line;
    obj.cls = cls;
    obj.is_container = container;
    obj.context = ctx;
    pts.objects.push_back(obj);
    return obj.id;
  }

  const ApiSpec* resolve(const CallFact& call) {
    LookupQuery q;
    q.method = call.callee.method;
    q.dotted = call.callee.dotted;
    if (call.callee.receiver != kNoVar) {
      q.has_receiver = true;
      q.receiver_classes = pts.classes_of(call.callee.receiver);
    }
    return db.lookup(q);
  }

  void run() {
    // allocation sites are fixed up front
    for (size_t i = 0; i < fb.containers.size(); ++i) {
      const ContainerFact& c = fb.containers[i];
      const char* cls = c.kind == ContainerKind::List ? "list"
                      : c.kind == ContainerKind::Tuple ? "tuple"
                      : c.kind == ContainerKind::Set ? "set" : "dict";
      int obj = allocate(c.line, cls, true, context_of_name(fb.var(c.target).name));
      add_object(var_set(c.target), obj);
    }
    for (size_t i = 0; i < fb.calls.size(); ++i) {
      const CallFact& call = fb.calls[i];
      const ApiSpec* spec = resolve(call);
      if (spec != nullptr && spec->kind == ApiKind::ModelSource) {
        int obj = allocate(call.line, spec->model_class, false,
                           context_of_name(call.result != kNoVar
                                               ? fb.var(call.result).name
                                               : std::string{}));
        pts.call_alloc[i] = obj;
        if (call.result != kNoVar) add_object(var_set(call.result), obj);
      }
    }

    // round-robin fixpoint over the remaining inclusion constraints
    do {
      changed = false;
      pass();
    } while (changed);

    for (size_t i = 0; i < fb.calls.size(); ++i) pts.call_spec[i] = resolve(fb.calls[i]);
  }

  void pass() {
    for (const ContainerFact& c : fb.containers) {
      for (int obj : std::vector<int>(var_set(c.target))) {
        if (!pts.objects[static_cast<size_t>(obj)].is_container) continue;
        for (VarId e : c.elements) include(slot(obj, 0), var_set(e));
      }
    }
    for (const AssignFact& a : fb.assigns) include(var_set(a.target), var_set(a.source));
    for (const PhiFact& phi : fb.phis) {
      for (VarId op : phi.operands) include(var_set(phi.target), var_set(op));
    }
    for (const SubscriptLoadFact& s : fb.sub_loads) {
      for (int obj : std::vector<int>(var_set(s.object))) {
        const AbstractObject& o = pts.objects[static_cast<size_t>(obj)];
        if (o.is_container) {
          include(var_set(s.target), slot(obj, 0));
        } else {
          // coarse: element extraction from a non-container keeps the object
          add_object(var_set(s.target), obj);
        }
      }
    }
    for (const SubscriptStoreFact& s : fb.sub_stores) {
      for (int obj : std::vector<int>(var_set(s.object))) {
        if (pts.objects[static_cast<size_t>(obj)].is_container) {
          include(slot(obj, 0), var_set(s.source));
        }
      }
    }
    for (const AttrLoadFact& a : fb.attr_loads) {
      if (a.object == kNoVar) continue;
      int fid = field_id(a.attr);
      for (int obj : std::vector<int>(var_set(a.object))) {
        include(var_set(a.target), slot(obj, fid));
      }
    }
    for (const AttrStoreFact& a : fb.attr_stores) {
      int fid = field_id(a.attr);
      for (int obj : std::vector<int>(var_set(a.object))) {
        include(slot(obj, fid), var_set(a.source));
      }
    }
    for (size_t i = 0; i < fb.calls.size(); ++i) {
      const CallFact& call = fb.calls[i];
      apply_call(call, static_cast<int>(i));
    }
  }

  void apply_call(const CallFact& call, int index) {
    const VarId recv = call.callee.receiver;
    // container mutation methods
    if (recv != kNoVar && !call.callee.method.empty()) {
      const std::string& m = call.callee.method;
      if ((m == "append" || m == "add") && !call.args.empty()) {
        for (int obj : std::vector<int>(var_set(recv))) {
          if (pts.objects[static_cast<size_t>(obj)].is_container) {
            include(slot(obj, 0), var_set(call.args[0]));
          }
        }
      } else if (m == "insert" && call.args.size() >= 2) {
        for (int obj : std::vector<int>(var_set(recv))) {
          if (pts.objects[static_cast<size_t>(obj)].is_container) {
            include(slot(obj, 0), var_set(call.args[1]));
          }
        }
      } else if (m == "extend" && !call.args.empty()) {
        for (int obj : std::vector<int>(var_set(recv))) {
          if (!pts.objects[static_cast<size_t>(obj)].is_container) continue;
          for (int src_obj : std::vector<int>(var_set(call.args[0]))) {
            if (pts.objects[static_cast<size_t>(src_obj)].is_container) {
              include(slot(obj, 0), slot(src_obj, 0));
            }
          }
        }
      }
    }
    // flattening builtins keep their arguments' objects reachable
    if (call.callee.receiver == kNoVar) {
      const std::string& m = call.callee.method;
      if (m == "list" || m == "tuple" || m == "sorted" || m == "reversed" ||
          m == "zip" || m == "enumerate" || m == "set") {
        if (call.result != kNoVar) {
          for (VarId arg : call.args) {
            for (int obj : std::vector<int>(var_set(arg))) {
              const AbstractObject& o = pts.objects[static_cast<size_t>(obj)];
              if (o.is_container) {
                include(var_set(call.result), slot(obj, 0));
              } else {
                add_object(var_set(call.result), obj);
              }
            }
          }
        }
      }
    }
    const ApiSpec* spec = resolve(call);
    if (spec == nullptr) return;
    if (pts.call_alloc[static_cast<size_t>(index)] >= 0 && call.result != kNoVar) {
      add_object(var_set(call.result), pts.call_alloc[static_cast<size_t>(index)]);
    }
    if (spec->result == ResultRole::Self && recv != kNoVar && call.result != kNoVar) {
      include(var_set(call.result), var_set(recv));
    }
  }
};

}  // namespace

PointsTo pointer_analysis(const FactBase& facts, const SpecDB& db,
                          const PointerAnalysisOptions& options) {
  Solver solver(facts, db, options.budget);
  solver.run();
  return std::move(solver.pts);
}

}  // namespace leaklint
