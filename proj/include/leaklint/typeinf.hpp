// Spec-driven classification of SSA variables into Dataset / Model / Scalar.
#pragma once

#include <string>
#include <vector>

#include "leaklint/facts.hpp"
#include "leaklint/pointsto.hpp"
#include "leaklint/specs.hpp"

namespace leaklint {

enum class VarClass : uint8_t { Unknown, Dataset, Model, Scalar };

struct TypeMap {
  std::vector<VarClass> classification;       // per VarId
  std::vector<std::string> provenance;        // what decided the class
  std::vector<bool> single_sample;            // literal-built / single-row datasets
  std::vector<bool> unknown_api;              // produced by an unmodeled call
  std::vector<std::string> diagnostics;       // conflicting-evidence reports

  VarClass of(VarId v) const {
    if (v < 0 || static_cast<size_t>(v) >= classification.size()) return VarClass::Unknown;
    return classification[static_cast<size_t>(v)];
  }
  bool is_dataset(VarId v) const { return of(v) == VarClass::Dataset; }
  bool is_single_sample(VarId v) const {
    return v >= 0 && static_cast<size_t>(v) < single_sample.size() &&
           single_sample[static_cast<size_t>(v)];
  }
};

const char* var_class_name(VarClass c);

// Seeds classes from spec-matched calls (sources, constructors, splits,
// literals, dataset-role argument positions) and propagates them to a least
// fixpoint. Only Unknown is ever refined; Dataset/Model conflicts reset the
// variable to Unknown with a diagnostic.
TypeMap infer(const FactBase& facts, const SpecDB& db, const PointsTo& pts);

}  // namespace leaklint
