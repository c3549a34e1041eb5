// Inclusion-based points-to analysis over the SSA facts.
//
// Abstract objects are allocation sites: model/transformer constructor calls
// and container literals. Context sensitivity comes from call-site cloning in
// the frontend: statements inlined from a user function carry the call-site
// chain in their variable names, so each inline context allocates its own
// objects (the chain, capped at two sites, is stored as the object context).
// Containers are modeled field-insensitively with a single element slot.
#pragma once

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "leaklint/facts.hpp"
#include "leaklint/specs.hpp"

namespace leaklint {

struct AbstractObject {
  int id = 0;
  int alloc_line = 0;
  std::string context;   // inline call-site chain ("" at module level)
  std::string cls;       // constructor class; "list"/"tuple"/"set"/"dict" for containers
  bool is_container = false;
};

struct PointsTo {
  std::vector<AbstractObject> objects;
  std::vector<std::vector<int>> var_objects;            // per VarId, sorted
  std::vector<const ApiSpec*> call_spec;                // per call index, may be null
  std::vector<int> call_alloc;                          // alloc id per call, -1 if none
  // object sets held by element/field slots; element slot uses field id 0
  std::unordered_map<long, std::vector<int>> slot_objects;
  std::unordered_map<std::string, int> field_names;     // attr -> field id (>= 1)

  static long slot_key(int obj, int field) {
    return (static_cast<long>(obj) << 20) | static_cast<long>(field);
  }
  const std::vector<int>& objects_of(VarId v) const {
    static const std::vector<int> empty;
    if (v < 0 || static_cast<size_t>(v) >= var_objects.size()) return empty;
    return var_objects[static_cast<size_t>(v)];
  }
  std::vector<std::string> classes_of(VarId v) const {
    std::vector<std::string> out;
    for (int obj : objects_of(v)) {
      const std::string& cls = objects[static_cast<size_t>(obj)].cls;
      if (!cls.empty() && std::find(out.begin(), out.end(), cls) == out.end()) {
        out.push_back(cls);
      }
    }
    return out;
  }
};

struct PointerAnalysisOptions {
  long budget = 5000000;  // propagation steps before AnalysisBudgetExceeded
};

// Solves the inclusion constraints to a fixpoint. The spec database supplies
// which calls allocate objects and which return their receiver.
// Throws AnalysisBudgetExceeded when the propagation budget is exhausted.
PointsTo pointer_analysis(const FactBase& facts, const SpecDB& db,
                          const PointerAnalysisOptions& options = {});

}  // namespace leaklint
