#include "leaklint/specs.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace leaklint {

const char* api_kind_name(ApiKind kind) {
  switch (kind) {
    case ApiKind::Train: return "train";
    case ApiKind::Eval: return "eval";
    case ApiKind::MapTransform: return "map_transform";
    case ApiKind::ReduceTransform: return "reduce_transform";
    case ApiKind::DuplicateTransform: return "duplicate_transform";
    case ApiKind::FilterTransform: return "filter_transform";
    case ApiKind::Split: return "split";
    case ApiKind::DatasetSource: return "dataset_source";
    case ApiKind::ModelSource: return "model_source";
    case ApiKind::PipelineFit: return "pipeline_fit";
    case ApiKind::Metric: return "metric";
  }
  return "?";
}

std::optional<ApiKind> api_kind_from_string(const std::string& s) {
  static const std::pair<const char*, ApiKind> table[] = {
      {"train", ApiKind::Train},
      {"eval", ApiKind::Eval},
      {"map_transform", ApiKind::MapTransform},
      {"reduce_transform", ApiKind::ReduceTransform},
      {"duplicate_transform", ApiKind::DuplicateTransform},
      {"filter_transform", ApiKind::FilterTransform},
      {"split", ApiKind::Split},
      {"dataset_source", ApiKind::DatasetSource},
      {"model_source", ApiKind::ModelSource},
      {"pipeline_fit", ApiKind::PipelineFit},
      {"metric", ApiKind::Metric},
  };
  for (const auto& [name, kind] : table) {
    if (s == name) return kind;
  }
  return std::nullopt;
}

namespace {

// Dotted-path compatibility: either side empty, equal, or one a dotted
// prefix/suffix of the other (covers partially-resolved aliases and
// submodule layouts).
bool module_compatible(const std::string& query_mod, const std::string& entry_mod) {
  if (query_mod.empty() || entry_mod.empty()) return true;
  if (query_mod == entry_mod) return true;
  auto dotted_suffix = [](const std::string& longer, const std::string& shorter) {
    return longer.size() > shorter.size() + 1 &&
           longer.compare(longer.size() - shorter.size(), shorter.size(), shorter) == 0 &&
           longer[longer.size() - shorter.size() - 1] == '.';
  };
  auto dotted_prefix = [](const std::string& longer, const std::string& shorter) {
    return longer.size() > shorter.size() + 1 &&
           longer.compare(0, shorter.size(), shorter) == 0 &&
           longer[shorter.size()] == '.';
  };
  return dotted_suffix(query_mod, entry_mod) || dotted_suffix(entry_mod, query_mod) ||
         dotted_prefix(query_mod, entry_mod) || dotted_prefix(entry_mod, query_mod);
}

}  // namespace

const ApiSpec* SpecDB::lookup(const LookupQuery& query) const {
  if (query.method.empty()) return nullptr;
  std::string query_mod;
  if (!query.dotted.empty()) {
    size_t dot = query.dotted.rfind('.');
    if (dot != std::string::npos) query_mod = query.dotted.substr(0, dot);
  }
  for (const ApiSpec& spec : specs) {
    if (spec.name != query.method) continue;
    if (!spec.receiver_class.empty()) {
      if (!query.has_receiver) continue;
      if (std::find(query.receiver_classes.begin(), query.receiver_classes.end(),
                    spec.receiver_class) == query.receiver_classes.end()) {
        continue;
      }
    }
    if (!query.has_receiver && !module_compatible(query_mod, spec.module)) continue;
    return &spec;
  }
  return nullptr;
}

namespace {

std::vector<int> to_int_list(const nlohmann::json& j, const char* field, size_t idx) {
  std::vector<int> out;
  if (!j.is_array()) {
    throw SpecFormatError("specs[" + std::to_string(idx) + "]: field '" + field +
                          "' must be an array of integers");
  }
  for (const auto& v : j) {
    if (!v.is_number_integer())
      throw SpecFormatError("specs[" + std::to_string(idx) + "]: field '" + field +
                            "' must contain integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<std::string> to_str_list(const nlohmann::json& j, const char* field,
                                     size_t idx) {
  std::vector<std::string> out;
  if (!j.is_array()) {
    throw SpecFormatError("specs[" + std::to_string(idx) + "]: field '" + field +
                          "' must be an array of strings");
  }
  for (const auto& v : j) {
    if (!v.is_string())
      throw SpecFormatError("specs[" + std::to_string(idx) + "]: field '" + field +
                            "' must contain strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

ApiSpec parse_spec_entry(const nlohmann::json& j, size_t idx) {
  if (!j.is_object())
    throw SpecFormatError("specs[" + std::to_string(idx) + "]: entry must be an object");
  ApiSpec spec;
  if (!j.contains("name") || !j["name"].is_string())
    throw SpecFormatError("specs[" + std::to_string(idx) + "]: missing string field 'name'");
  spec.name = j["name"].get<std::string>();
  if (!j.contains("kind") || !j["kind"].is_string())
    throw SpecFormatError("specs[" + std::to_string(idx) + "]: missing string field 'kind'");
  auto kind = api_kind_from_string(j["kind"].get<std::string>());
  if (!kind)
    throw SpecFormatError("specs[" + std::to_string(idx) + "]: unknown kind '" +
                          j["kind"].get<std::string>() + "'");
  spec.kind = *kind;
  if (j.contains("module")) spec.module = j["module"].get<std::string>();
  if (j.contains("class")) spec.receiver_class = j["class"].get<std::string>();
  if (j.contains("data_args")) spec.data_args = to_int_list(j["data_args"], "data_args", idx);
  if (j.contains("label_args"))
    spec.label_args = to_int_list(j["label_args"], "label_args", idx);
  if (j.contains("data_kwargs"))
    spec.data_kwargs = to_str_list(j["data_kwargs"], "data_kwargs", idx);
  if (j.contains("label_kwargs"))
    spec.label_kwargs = to_str_list(j["label_kwargs"], "label_kwargs", idx);
  if (j.contains("variadic_data")) spec.variadic_data = j["variadic_data"].get<bool>();
  if (j.contains("receiver_is_data"))
    spec.receiver_is_data = j["receiver_is_data"].get<bool>();
  if (j.contains("fits_receiver")) spec.fits_receiver = j["fits_receiver"].get<bool>();
  if (j.contains("maps_result")) spec.maps_result = j["maps_result"].get<bool>();
  if (j.contains("split_train"))
    spec.split_train = to_int_list(j["split_train"], "split_train", idx);
  if (j.contains("split_test"))
    spec.split_test = to_int_list(j["split_test"], "split_test", idx);
  if (j.contains("model_class")) spec.model_class = j["model_class"].get<std::string>();
  if (j.contains("result")) {
    const std::string r = j["result"].get<std::string>();
    if (r == "dataset") spec.result = ResultRole::Dataset;
    else if (r == "model") spec.result = ResultRole::Model;
    else if (r == "scalar") spec.result = ResultRole::Scalar;
    else if (r == "self") spec.result = ResultRole::Self;
    else if (r == "none") spec.result = ResultRole::None;
    else
      throw SpecFormatError("specs[" + std::to_string(idx) + "]: unknown result '" + r + "'");
  } else {
    switch (spec.kind) {
      case ApiKind::Train: case ApiKind::PipelineFit: spec.result = ResultRole::Self; break;
      case ApiKind::Eval: spec.result = ResultRole::Dataset; break;
      case ApiKind::Metric: spec.result = ResultRole::Scalar; break;
      case ApiKind::ModelSource: spec.result = ResultRole::Model; break;
      default: spec.result = ResultRole::Dataset; break;
    }
  }
  if (spec.kind == ApiKind::ModelSource && spec.model_class.empty()) {
    spec.model_class = spec.name;
  }
  if (spec.kind == ApiKind::Split && spec.split_train.size() != spec.split_test.size() &&
      !(spec.split_train.empty() && spec.split_test.empty())) {
    throw SpecFormatError("specs[" + std::to_string(idx) +
                          "]: split_train/split_test must pair up");
  }
  return spec;
}

}  // namespace

SpecDB builtin_specs();  // defined in builtin_specs.cpp

SpecDB parse_specs_json(const std::string& json_text, bool layer_on_builtin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw SpecFormatError(std::string("invalid spec JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema_version"))
    throw SpecFormatError("spec file must be an object with a schema_version field");
  if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != 1)
    throw SpecFormatError("unsupported spec schema_version");
  SpecDB db;
  if (doc.contains("library_versions") && doc["library_versions"].is_object()) {
    for (auto it = doc["library_versions"].begin(); it != doc["library_versions"].end();
         ++it) {
      db.library_versions.emplace_back(it.key(), it.value().is_string()
                                                     ? it.value().get<std::string>()
                                                     : it.value().dump());
    }
  }
  if (doc.contains("specs")) {
    if (!doc["specs"].is_array()) throw SpecFormatError("'specs' must be an array");
    size_t idx = 0;
    for (const auto& entry : doc["specs"]) {
      db.specs.push_back(parse_spec_entry(entry, idx++));
    }
  }
  if (layer_on_builtin) {
    SpecDB base = builtin_specs();
    for (ApiSpec& spec : base.specs) db.specs.push_back(std::move(spec));
    for (auto& lv : base.library_versions) db.library_versions.push_back(std::move(lv));
  }
  return db;
}

SpecDB load_specs(const std::string& path_or_builtin) {
  if (path_or_builtin.empty() || path_or_builtin == "builtin") return builtin_specs();
  std::ifstream in(path_or_builtin, std::ios::binary);
  if (!in) throw SpecFormatError("cannot open spec file: " + path_or_builtin);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_specs_json(buf.str(), /*layer_on_builtin=*/true);
}

}  // namespace leaklint
