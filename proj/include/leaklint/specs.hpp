// Declarative behavior models of library APIs.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leaklint/diag.hpp"

namespace leaklint {

enum class ApiKind : uint8_t {
  Train, Eval, MapTransform, ReduceTransform, DuplicateTransform,
  FilterTransform, Split, DatasetSource, ModelSource, PipelineFit, Metric,
};

enum class ResultRole : uint8_t { Dataset, Model, Scalar, Self, None };

struct ApiSpec {
  std::string name;            // function or method name (required)
  std::string module;          // dotted module path for free functions
  std::string receiver_class;  // class constraint for method patterns
  ApiKind kind = ApiKind::MapTransform;
  std::vector<int> data_args;       // positional indices carrying row data
  std::vector<int> label_args;      // positional indices carrying labels
  std::vector<std::string> data_kwargs;
  std::vector<std::string> label_kwargs;
  bool variadic_data = false;       // every positional argument carries data
  bool receiver_is_data = false;    // the receiver carries the rows (df.mean())
  bool fits_receiver = false;       // reduced information folds into the receiver
  bool maps_result = false;         // fit_transform: reduce plus map on one site
  ResultRole result = ResultRole::Dataset;
  std::string model_class;          // class tag of constructed objects
  // split part indices; empty means alternating (2i train / 2i+1 test per arg i)
  std::vector<int> split_train;
  std::vector<int> split_test;
};

struct LookupQuery {
  std::string dotted;   // full dotted path for free calls; empty for methods
  std::string method;   // trailing name
  std::vector<std::string> receiver_classes;  // candidate classes of the receiver
  bool has_receiver = false;
};

struct SpecDB {
  std::vector<ApiSpec> specs;                      // first match wins
  std::vector<std::pair<std::string, std::string>> library_versions;

  // Best-match spec or null. Deterministic: declaration order decides.
  const ApiSpec* lookup(const LookupQuery& query) const;
};

const char* api_kind_name(ApiKind kind);
std::optional<ApiKind> api_kind_from_string(const std::string& s);

// Loads the bundled database ("builtin") or a user spec file layered on top
// of it. User entries take precedence over builtin ones.
// Throws SpecFormatError with field diagnostics.
SpecDB load_specs(const std::string& path_or_builtin);

// Parses a spec JSON document; when `layer_on_builtin` is set the builtin
// entries are appended after the parsed ones.
SpecDB parse_specs_json(const std::string& json_text, bool layer_on_builtin);

}  // namespace leaklint
